//! Weyl group enumeration, minimal coset representatives, double cosets,
//! and Bruhat order.
//!
//! Elements are identified by their action matrix on weight coordinates; each
//! carries its lexicographically smallest reduced word. The element list is
//! in canonical order (by length, then by word), which fixes every downstream
//! output order.

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::root_datum::{RootDatum, SimpleSet, WeightVec};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap, HashSet};

#[derive(Debug, Clone)]
pub struct WeylElt {
    action: IntMat,
    /// Lexicographically smallest reduced word, 1-based generator labels.
    word: Vec<usize>,
}

impl WeylElt {
    pub fn action(&self) -> &IntMat {
        &self.action
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    datum: RootDatum,
    elts: Vec<WeylElt>,
    index: HashMap<IntMat, usize>,
    /// right[w][i] is the index of w * s_{i+1}.
    right: Vec<Vec<usize>>,
}

/// Enumerates the full Weyl group by closure under the simple reflections.
///
/// Refuses to start when the closed-form group order exceeds the datum's cap.
/// New elements found while growing one BFS layer: lexmin candidate word
/// mapped to the matrix it names and every (source, generator) edge into it.
type Frontier = BTreeMap<Vec<usize>, (IntMat, Vec<(usize, usize)>)>;

pub fn enumerate(datum: &RootDatum) -> Result<WeylGroup> {
    let order = datum.weyl_order();
    let cap = datum.weyl_order_cap();
    if order > cap {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let s = datum.num_simple();
    let gens: Vec<IntMat> = (0..s).map(|i| datum.reflection(i)).collect();
    let dim = datum.coord_dim();

    let mut elts = vec![WeylElt {
        action: IntMat::identity(dim),
        word: Vec::new(),
    }];
    let mut index: HashMap<IntMat, usize> = HashMap::new();
    index.insert(elts[0].action.clone(), 0);
    let mut right: Vec<Vec<usize>> = vec![vec![usize::MAX; s]];

    let mut layer: Vec<usize> = vec![0];
    while !layer.is_empty() {
        // For each new element reached from this layer, keep every
        // (source, generator) edge and the lexicographically smallest word.
        let mut pending: Frontier = BTreeMap::new();
        let mut reached: HashMap<IntMat, Vec<usize>> = HashMap::new();
        for &w in &layer {
            for (g, gen) in gens.iter().enumerate() {
                let m = elts[w].action.mul(gen);
                if let Some(&t) = index.get(&m) {
                    right[w][g] = t;
                    continue;
                }
                let mut word = elts[w].word.clone();
                word.push(g + 1);
                match reached.get(&m).cloned() {
                    Some(best) if best <= word => {
                        pending.get_mut(&best).unwrap().1.push((w, g));
                    }
                    Some(best) => {
                        let (_, mut edges) = pending.remove(&best).unwrap();
                        edges.push((w, g));
                        reached.insert(m.clone(), word.clone());
                        pending.insert(word, (m, edges));
                    }
                    None => {
                        reached.insert(m.clone(), word.clone());
                        pending.insert(word, (m, vec![(w, g)]));
                    }
                }
            }
        }
        let mut next_layer = Vec::new();
        for (word, (m, edges)) in pending {
            let idx = elts.len();
            index.insert(m.clone(), idx);
            elts.push(WeylElt { action: m, word });
            right.push(vec![usize::MAX; s]);
            for (src, g) in edges {
                right[src][g] = idx;
            }
            next_layer.push(idx);
        }
        layer = next_layer;
    }

    if elts.len() as u128 != order {
        return Err(Error::InternalInconsistency(format!(
            "enumerated {} Weyl elements, closed form says {}",
            elts.len(),
            order
        )));
    }
    Ok(WeylGroup {
        datum: datum.clone(),
        elts,
        index,
        right,
    })
}

impl WeylGroup {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elts.len()
    }

    pub fn elt(&self, idx: usize) -> &WeylElt {
        &self.elts[idx]
    }

    pub fn length(&self, idx: usize) -> usize {
        self.elts[idx].word.len()
    }

    pub fn word(&self, idx: usize) -> &[usize] {
        &self.elts[idx].word
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest_length(&self) -> usize {
        self.elts.last().map_or(0, |e| e.word.len())
    }

    /// Index of w * s_{label} for a 1-based generator label.
    pub fn right_mul(&self, idx: usize, label: usize) -> usize {
        self.right[idx][label - 1]
    }

    fn right_mul_idx0(&self, idx: usize, g: usize) -> usize {
        self.right[idx][g]
    }

    /// Index of the product a * b.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elts[a].action.mul(&self.elts[b].action);
        self.index[&m]
    }

    pub fn index_of(&self, action: &IntMat) -> Option<usize> {
        self.index.get(action).copied()
    }

    /// w applied to a weight.
    pub fn act(&self, idx: usize, lambda: &WeightVec) -> Result<WeightVec> {
        if lambda.coords().len() != self.datum.coord_dim() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} coordinates, expected {}",
                lambda.coords().len(),
                self.datum.coord_dim()
            )));
        }
        Ok(WeightVec::from_coords_unchecked(
            self.elts[idx].action.apply(lambda.coords()),
        ))
    }

    /// Elements of the standard parabolic subgroup generated by `gens`,
    /// in canonical order.
    pub fn subgroup(&self, gens: &SimpleSet) -> Vec<usize> {
        let mut seen = HashSet::new();
        seen.insert(0usize);
        let mut queue = vec![0usize];
        while let Some(w) = queue.pop() {
            for g in 0..self.datum.num_simple() {
                if gens.contains_idx0(g) {
                    let t = self.right_mul_idx0(w, g);
                    if seen.insert(t) {
                        queue.push(t);
                    }
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Reduces w to the minimal representative of w W_P, returning the
    /// representative and the stripped Levi part v with w = rep * v and
    /// lengths adding.
    pub fn reduce_right(&self, mut w: usize, delta_p: &SimpleSet) -> (usize, Vec<usize>) {
        let mut levi_word = Vec::new();
        'outer: loop {
            for g in 0..self.datum.num_simple() {
                if delta_p.contains_idx0(g) {
                    let t = self.right_mul_idx0(w, g);
                    if self.length(t) < self.length(w) {
                        levi_word.push(g + 1);
                        w = t;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        levi_word.reverse();
        (w, levi_word)
    }

    /// True when every positive root is sent to a positive root by w (i.e.
    /// w is the identity); used in tests via the inversion count below.
    pub fn inversions(&self, idx: usize) -> usize {
        // number of positive roots sent to negative roots
        let roots = self.datum.positive_roots();
        let s = self.datum.num_simple();
        let root_basis: Vec<Vec<crate::rational::Rat>> = (0..s)
            .map(|j| self.datum.simple_root_weight_coords(j))
            .collect();
        // express w(alpha) in the simple-root basis by solving the linear
        // system over the root coordinates
        let mut count = 0;
        for root in &roots {
            // weight coordinates of the root
            let dim = self.datum.coord_dim();
            let mut wcoords = vec![crate::rational::Rat::zero(); dim];
            for (j, &c) in root.iter().enumerate() {
                if c != 0 {
                    for k in 0..dim {
                        let term = &root_basis[j][k]
                            * crate::rational::Rat::from_integer(num_bigint::BigInt::from(c));
                        wcoords[k] = &wcoords[k] + term;
                    }
                }
            }
            let image = self.elts[idx].action.apply(&wcoords);
            // solve sum_j x_j * root_basis[j] = image
            let a: Vec<Vec<crate::rational::Rat>> = (0..dim)
                .map(|k| (0..s).map(|j| root_basis[j][k].clone()).collect())
                .collect();
            let x = solve_rectangular(&a, &image)
                .expect("root image must lie in the root lattice");
            let negative = x.iter().all(|c| *c <= crate::rational::Rat::zero());
            if negative {
                count += 1;
            }
        }
        count
    }
}

/// Solves a (possibly rectangular, full column rank) system a x = b exactly.
fn solve_rectangular(
    a: &[Vec<crate::rational::Rat>],
    b: &[crate::rational::Rat],
) -> Option<Vec<crate::rational::Rat>> {
    use crate::rational::Rat;
    use num_traits::Zero;
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let pv = m[pivot_row][c].clone();
        for x in m[pivot_row][c..].iter_mut() {
            *x = &*x / &pv;
        }
        let lead = m[pivot_row].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != pivot_row && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&lead).skip(c) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    // consistency check
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Minimal-length representatives for the cosets W / W_P, in canonical order.
#[derive(Debug, Clone)]
pub struct CosetTable {
    delta_p: SimpleSet,
    reps: Vec<usize>,
}

impl CosetTable {
    pub fn delta_p(&self) -> &SimpleSet {
        &self.delta_p
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// u is minimal in u W_P iff right multiplication by every Levi generator
/// increases length.
pub fn minimal_coset_reps(group: &WeylGroup, delta_p: &SimpleSet) -> Result<CosetTable> {
    if delta_p.num_simple() != group.datum().num_simple() {
        return Err(Error::DimensionMismatch(format!(
            "parabolic set over {} simple roots, group has {}",
            delta_p.num_simple(),
            group.datum().num_simple()
        )));
    }
    let reps: Vec<usize> = (0..group.order())
        .filter(|&w| {
            (0..group.datum().num_simple()).all(|g| {
                !delta_p.contains_idx0(g)
                    || group.length(group.right_mul_idx0(w, g)) > group.length(w)
            })
        })
        .collect();
    Ok(CosetTable {
        delta_p: delta_p.clone(),
        reps,
    })
}

/// One double coset W_Q w W_P, recorded through the minimal W/W_P
/// representatives it contains.
#[derive(Debug, Clone)]
pub struct DoubleCosetRecord {
    pub id: usize,
    /// Group index of the minimal-length element of the double coset.
    pub min_rep: usize,
    /// Cell dimension: the maximum length among the coset representatives
    /// in the fiber.
    pub length: usize,
    /// Number of W/W_P cosets contained in the double coset.
    pub multiplicity: usize,
    /// Group indices of the minimal coset representatives in the fiber,
    /// ascending.
    pub fiber: Vec<usize>,
}

/// Groups the minimal W/W_P representatives under the left W_Q action.
pub fn double_cosets(
    group: &WeylGroup,
    cosets: &CosetTable,
    delta_q: &SimpleSet,
) -> Result<Vec<DoubleCosetRecord>> {
    if delta_q.num_simple() != group.datum().num_simple() {
        return Err(Error::DimensionMismatch(format!(
            "Levi set over {} simple roots, group has {}",
            delta_q.num_simple(),
            group.datum().num_simple()
        )));
    }
    let rep_set: HashSet<usize> = cosets.reps().iter().copied().collect();
    let mut visited: HashSet<usize> = HashSet::new();
    let mut records = Vec::new();
    for &start in cosets.reps() {
        if visited.contains(&start) {
            continue;
        }
        let mut fiber = vec![start];
        visited.insert(start);
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for g in 0..group.datum().num_simple() {
                if !delta_q.contains_idx0(g) {
                    continue;
                }
                // left multiply by s_g, then reduce back to the coset rep
                let prod = group.datum().reflection(g).mul(group.elt(u).action());
                let idx = group
                    .index_of(&prod)
                    .expect("product of group elements stays in the group");
                let (rep, _) = group.reduce_right(idx, cosets.delta_p());
                debug_assert!(rep_set.contains(&rep));
                if visited.insert(rep) {
                    fiber.push(rep);
                    queue.push(rep);
                }
            }
        }
        fiber.sort_unstable();
        let min_rep = fiber[0];
        let min_len = group.length(min_rep);
        if fiber.iter().skip(1).any(|&u| group.length(u) == min_len) {
            return Err(Error::InternalInconsistency(
                "double coset with two minimal-length representatives".to_string(),
            ));
        }
        let length = fiber.iter().map(|&u| group.length(u)).max().unwrap();
        records.push(DoubleCosetRecord {
            id: 0,
            min_rep,
            length,
            multiplicity: fiber.len(),
            fiber,
        });
    }
    // canonical order: by the group's canonical order of the minimal
    // representative (group indices are already sorted by length, then word)
    records.sort_by_key(|r| r.min_rep);
    for (i, r) in records.iter_mut().enumerate() {
        r.id = i;
    }
    Ok(records)
}

/// Bruhat order through the subword property: u <= v iff u is a product of
/// some subword of a reduced word of v. The reachable set of all subword
/// products is built letter by letter.
pub fn bruhat_leq(group: &WeylGroup, u: usize, v: usize) -> bool {
    if group.length(u) > group.length(v) {
        return false;
    }
    subword_products(group, v).contains(&u)
}

fn subword_products(group: &WeylGroup, v: usize) -> HashSet<usize> {
    let mut reach: HashSet<usize> = HashSet::new();
    reach.insert(group.identity());
    for &letter in group.word(v) {
        let additions: Vec<usize> = reach
            .iter()
            .map(|&x| group.right_mul(x, letter))
            .collect();
        reach.extend(additions);
    }
    reach
}

/// Closure partial order on double-coset records: a <= b iff the minimal
/// representative of a is Bruhat-below that of b.
#[derive(Debug, Clone)]
pub struct ClosureOrder {
    leq: Vec<Vec<bool>>,
}

impl ClosureOrder {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    /// Strict pairs (a, b) with a <= b and a != b, lexicographic.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.leq.len() {
            for b in 0..self.leq.len() {
                if a != b && self.leq[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

pub fn closure_order(group: &WeylGroup, records: &[DoubleCosetRecord]) -> ClosureOrder {
    let n = records.len();
    let mut leq = vec![vec![false; n]; n];
    for (b, rb) in records.iter().enumerate() {
        let reach = subword_products(group, rb.min_rep);
        for (a, ra) in records.iter().enumerate() {
            leq[a][b] = reach.contains(&ra.min_rep);
        }
    }
    ClosureOrder { leq }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, Family};

    fn group(family: Family, rank: usize) -> WeylGroup {
        enumerate(&build_root_datum(family, rank).unwrap()).unwrap()
    }

    #[test]
    fn orders_match_closed_forms() {
        for (f, r, n) in [
            (Family::Gl, 2, 2usize),
            (Family::Gl, 3, 6),
            (Family::Gl, 4, 24),
            (Family::Gl, 5, 120),
            (Family::B, 2, 8),
            (Family::B, 3, 48),
            (Family::B, 4, 384),
            (Family::C, 3, 48),
            (Family::D, 4, 192),
            (Family::G2, 2, 12),
            (Family::F4, 4, 1152),
        ] {
            assert_eq!(group(f, r).order(), n, "{} rank {}", f.name(), r);
        }
    }

    #[test]
    fn cap_refuses_large_groups() {
        let datum = build_root_datum(Family::E7, 7).unwrap().with_max_weyl_order(1_000_000);
        match enumerate(&datum) {
            Err(Error::GroupTooLarge { order, cap }) => {
                assert_eq!(order, 2_903_040);
                assert_eq!(cap, 1_000_000);
            }
            other => panic!("expected GroupTooLarge, got {other:?}"),
        }
        // an explicit larger cap admits B_5 (order 3840)
        let datum = build_root_datum(Family::B, 5).unwrap().with_max_weyl_order(4000);
        assert_eq!(enumerate(&datum).unwrap().order(), 3840);
        let datum = build_root_datum(Family::B, 5).unwrap().with_max_weyl_order(100);
        assert!(enumerate(&datum).is_err());
    }

    #[test]
    fn gl3_words_are_lex_minimal() {
        let g = group(Family::Gl, 3);
        let words: Vec<Vec<usize>> = (0..g.order()).map(|i| g.word(i).to_vec()).collect();
        assert_eq!(
            words,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![1, 2],
                vec![2, 1],
                vec![1, 2, 1],
            ]
        );
    }

    #[test]
    fn longest_element_lengths() {
        assert_eq!(group(Family::Gl, 4).longest_length(), 6);
        assert_eq!(group(Family::B, 2).longest_length(), 4);
        assert_eq!(group(Family::G2, 2).longest_length(), 6);
        assert_eq!(group(Family::F4, 4).longest_length(), 24);
    }

    #[test]
    fn length_counts_inversions() {
        for g in [group(Family::Gl, 4), group(Family::B, 2), group(Family::G2, 2)] {
            for idx in 0..g.order() {
                assert_eq!(g.inversions(idx), g.length(idx));
            }
        }
    }

    #[test]
    fn words_multiply_to_the_element() {
        let g = group(Family::B, 3);
        for idx in 0..g.order() {
            let mut acc = g.identity();
            for &letter in g.word(idx) {
                acc = g.right_mul(acc, letter);
            }
            assert_eq!(acc, idx);
        }
    }

    #[test]
    fn grassmannian_coset_reps() {
        let g = group(Family::Gl, 4);
        let p = SimpleSet::new(3, &[1, 3]).unwrap();
        let t = minimal_coset_reps(&g, &p).unwrap();
        assert_eq!(t.len(), 6);
        let mut lengths: Vec<usize> = t.reps().iter().map(|&r| g.length(r)).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn coset_reps_edge_cases() {
        let g = group(Family::Gl, 3);
        let all = minimal_coset_reps(&g, &SimpleSet::empty(2)).unwrap();
        assert_eq!(all.len(), 6);
        let trivial = minimal_coset_reps(&g, &SimpleSet::full(2)).unwrap();
        assert_eq!(trivial.reps(), &[0]);
    }

    #[test]
    fn unique_factorization_through_cosets() {
        let g = group(Family::Gl, 4);
        let p = SimpleSet::new(3, &[1, 3]).unwrap();
        let table = minimal_coset_reps(&g, &p).unwrap();
        let levi = g.subgroup(&p);
        assert_eq!(table.len() * levi.len(), g.order());
        // every w factors as rep * v with lengths adding
        for w in 0..g.order() {
            let (rep, levi_word) = g.reduce_right(w, &p);
            assert!(table.reps().contains(&rep));
            let mut v = g.identity();
            for &letter in &levi_word {
                v = g.right_mul(v, letter);
            }
            assert!(levi.contains(&v));
            assert_eq!(g.mul(rep, v), w);
            assert_eq!(g.length(rep) + g.length(v), g.length(w));
        }
    }

    #[test]
    fn grassmannian_double_cosets() {
        let g = group(Family::Gl, 4);
        let p = SimpleSet::new(3, &[1, 3]).unwrap();
        let table = minimal_coset_reps(&g, &p).unwrap();
        let records = double_cosets(&g, &table, &p).unwrap();
        assert_eq!(records.len(), 3);
        let mults: Vec<usize> = records.iter().map(|r| r.multiplicity).collect();
        let lens: Vec<usize> = records.iter().map(|r| r.length).collect();
        assert_eq!(mults, vec![1, 4, 1]);
        assert_eq!(lens, vec![0, 3, 4]);
    }

    #[test]
    fn borel_double_cosets_are_cosets() {
        let g = group(Family::Gl, 4);
        let p = SimpleSet::new(3, &[1, 3]).unwrap();
        let table = minimal_coset_reps(&g, &p).unwrap();
        let records = double_cosets(&g, &table, &SimpleSet::empty(3)).unwrap();
        assert_eq!(records.len(), 6);
        assert!(records.iter().all(|r| r.multiplicity == 1));
        // two incomparable length-2 cells
        let order = closure_order(&g, &records);
        let twos: Vec<usize> = records
            .iter()
            .filter(|r| r.length == 2)
            .map(|r| r.id)
            .collect();
        assert_eq!(twos.len(), 2);
        assert!(!order.leq(twos[0], twos[1]));
        assert!(!order.leq(twos[1], twos[0]));
    }

    #[test]
    fn bruhat_matches_brute_force() {
        // brute force: u <= v iff some subset of positions of v's word
        // multiplies to u
        for g in [group(Family::Gl, 3), group(Family::B, 2), group(Family::Gl, 4)] {
            for v in 0..g.order() {
                let word = g.word(v).to_vec();
                let mut reachable = vec![false; g.order()];
                for mask in 0u32..(1 << word.len()) {
                    let mut acc = g.identity();
                    for (pos, &letter) in word.iter().enumerate() {
                        if mask & (1 << pos) != 0 {
                            acc = g.right_mul(acc, letter);
                        }
                    }
                    reachable[acc] = true;
                }
                for (u, &reach) in reachable.iter().enumerate() {
                    assert_eq!(bruhat_leq(&g, u, v), reach);
                }
            }
        }
    }

    #[test]
    fn closure_order_is_a_partial_order() {
        let g = group(Family::Gl, 4);
        let p = SimpleSet::new(3, &[1, 3]).unwrap();
        let table = minimal_coset_reps(&g, &p).unwrap();
        let records = double_cosets(&g, &table, &p).unwrap();
        let ord = closure_order(&g, &records);
        let n = records.len();
        for a in 0..n {
            assert!(ord.leq(a, a));
            for b in 0..n {
                if a != b {
                    assert!(!(ord.leq(a, b) && ord.leq(b, a)));
                }
                for c in 0..n {
                    if ord.leq(a, b) && ord.leq(b, c) {
                        assert!(ord.leq(a, c));
                    }
                }
            }
        }
        // unique maximal cell
        let maxima: Vec<usize> = (0..n).filter(|&a| (0..n).all(|b| ord.leq(b, a))).collect();
        assert_eq!(maxima.len(), 1);
    }
}
