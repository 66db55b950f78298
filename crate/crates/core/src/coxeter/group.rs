//! Element tables.
//!
//! Elements are numbered by (length, lexicographically first reduced word).
//! Those words are prefix-closed, so `parent(w) = w s` for the last letter
//! `s` of the word of `w` forms a trie rooted at the identity. Products,
//! bar images and functionals in the Hecke algebra are computed by walking
//! this trie.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::element::{left_mul_gen, right_mul_gen, window_length};
use super::{CoxeterContext, GroupElement};
use crate::error::{Error, Result};

/// Default cap on the number of group elements (`|W(B_6)| = 46080`).
pub const DEFAULT_BUDGET: u64 = 50_000;

#[derive(Debug)]
pub struct Group {
    ctx: CoxeterContext,
    gens: Vec<u8>,
    windows: Vec<Vec<i8>>,
    index: HashMap<Vec<i8>, u32>,
    lengths: Vec<u16>,
    words: Vec<Vec<u8>>,
    parent: Vec<u32>,
    children: Vec<Vec<(usize, u32)>>,
    rmul: Vec<Vec<u32>>,
    lmul: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    up_pairs: Vec<Vec<(u32, u32)>>,
    left_up_pairs: Vec<Vec<(u32, u32)>>,
}

fn cache() -> &'static Mutex<HashMap<CoxeterContext, Arc<Group>>> {
    static CACHE: OnceLock<Mutex<HashMap<CoxeterContext, Arc<Group>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Group {
    /// Shared table for `ctx`, built once.
    pub fn cached(ctx: CoxeterContext, budget: u64) -> Result<Arc<Group>> {
        let size = ctx.order();
        if size > budget {
            return Err(Error::BudgetExceeded { size, budget });
        }
        if let Some(g) = cache().lock().unwrap().get(&ctx) {
            return Ok(g.clone());
        }
        let g = Arc::new(Group::build(ctx));
        Ok(cache().lock().unwrap().entry(ctx).or_insert(g).clone())
    }

    /// Breadth-first closure under right multiplication.
    pub fn build(ctx: CoxeterContext) -> Group {
        let ty = ctx.ty;
        let gens = ctx.generators();
        let e: Vec<i8> = (1..=ctx.rank as i8).collect();
        let mut level: Vec<(Vec<i8>, Vec<u8>)> = vec![(e, Vec::new())];
        let mut windows = Vec::new();
        let mut words = Vec::new();
        let mut lengths = Vec::new();
        let mut len = 0u16;
        while !level.is_empty() {
            level.sort_by(|a, b| a.1.cmp(&b.1));
            let mut next: HashMap<Vec<i8>, Vec<u8>> = HashMap::new();
            for (w, word) in &level {
                for &s in &gens {
                    let mut u = w.clone();
                    right_mul_gen(ty, &mut u, s);
                    if window_length(ty, &u) != len as usize + 1 {
                        continue;
                    }
                    let mut cand = word.clone();
                    cand.push(s);
                    next.entry(u)
                        .and_modify(|best| {
                            if cand < *best {
                                *best = cand.clone();
                            }
                        })
                        .or_insert(cand);
                }
            }
            for (w, word) in level {
                windows.push(w);
                words.push(word);
                lengths.push(len);
            }
            level = next.into_iter().collect();
            len += 1;
        }
        let n = windows.len();
        let index: HashMap<Vec<i8>, u32> =
            windows.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let act = |f: fn(super::CoxeterType, &mut [i8], u8)| -> Vec<Vec<u32>> {
            gens.iter()
                .map(|&s| {
                    windows
                        .iter()
                        .map(|w| {
                            let mut u = w.clone();
                            f(ty, &mut u, s);
                            index[&u]
                        })
                        .collect()
                })
                .collect()
        };
        let rmul = act(right_mul_gen);
        let lmul = act(left_mul_gen);
        let mut parent = vec![0u32; n];
        let mut children = vec![Vec::new(); n];
        for i in 1..n {
            let s = *words[i].last().unwrap();
            let gi = gens.iter().position(|&t| t == s).unwrap();
            let p = rmul[gi][i];
            parent[i] = p;
            children[p as usize].push((gi, i as u32));
        }
        let inverse = windows
            .iter()
            .map(|w| index[GroupElement::from_window(ctx, w.clone()).unwrap().inverse().window()])
            .collect();
        let ups = |table: &Vec<Vec<u32>>| -> Vec<Vec<(u32, u32)>> {
            table
                .iter()
                .map(|r| {
                    (0..n as u32)
                        .filter(|&x| lengths[r[x as usize] as usize] > lengths[x as usize])
                        .map(|x| (x, r[x as usize]))
                        .collect()
                })
                .collect()
        };
        let up_pairs = ups(&rmul);
        let left_up_pairs = ups(&lmul);
        Group {
            ctx,
            gens,
            windows,
            index,
            lengths,
            words,
            parent,
            children,
            rmul,
            lmul,
            inverse,
            up_pairs,
            left_up_pairs,
        }
    }

    pub fn ctx(&self) -> CoxeterContext {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    /// Generator labels; positions in this list are "generator slots".
    pub fn gens(&self) -> &[u8] {
        &self.gens
    }

    pub fn gen_slot(&self, s: u8) -> Result<usize> {
        self.gens
            .iter()
            .position(|&t| t == s)
            .ok_or_else(|| Error::OutOfRange(format!("generator {s} in {}", self.ctx)))
    }

    pub fn element(&self, i: u32) -> GroupElement {
        GroupElement::from_window(self.ctx, self.windows[i as usize].clone()).unwrap()
    }

    pub fn window(&self, i: u32) -> &[i8] {
        &self.windows[i as usize]
    }

    pub fn index_of(&self, w: &GroupElement) -> Result<u32> {
        if w.ctx() != self.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", w.ctx(), self.ctx)));
        }
        Ok(self.index[w.window()])
    }

    pub fn index_of_window(&self, w: &[i8]) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn index_of_word(&self, word: &[u8]) -> Result<u32> {
        let mut i = 0u32;
        for &s in word {
            i = self.rmul[self.gen_slot(s)?][i as usize];
        }
        Ok(i)
    }

    pub fn length(&self, i: u32) -> usize {
        self.lengths[i as usize] as usize
    }

    /// Lexicographically first reduced word.
    pub fn word(&self, i: u32) -> &[u8] {
        &self.words[i as usize]
    }

    /// `(w s, slot of s)` for the last letter `s` of the word of `w`.
    pub fn parent(&self, i: u32) -> Option<(u32, usize)> {
        if i == 0 {
            return None;
        }
        let s = *self.words[i as usize].last().unwrap();
        Some((self.parent[i as usize], self.gen_slot(s).unwrap()))
    }

    /// Trie children as `(slot, index)`.
    pub fn children(&self, i: u32) -> &[(usize, u32)] {
        &self.children[i as usize]
    }

    /// `w s` for the generator in `slot`.
    pub fn rmul(&self, i: u32, slot: usize) -> u32 {
        self.rmul[slot][i as usize]
    }

    /// `s w` for the generator in `slot`.
    pub fn lmul(&self, i: u32, slot: usize) -> u32 {
        self.lmul[slot][i as usize]
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn w0(&self) -> u32 {
        self.len() as u32 - 1
    }

    /// Pairs `(x, x s)` with `l(x s) = l(x) + 1`.
    pub fn up_pairs(&self, slot: usize) -> &[(u32, u32)] {
        &self.up_pairs[slot]
    }

    /// Pairs `(x, s x)` with `l(s x) = l(x) + 1`.
    pub fn left_up_pairs(&self, slot: usize) -> &[(u32, u32)] {
        &self.left_up_pairs[slot]
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        let mut x = i;
        for &s in self.word(j) {
            x = self.rmul[self.gen_slot(s).unwrap()][x as usize];
        }
        x
    }

    pub fn in_parabolic(&self, i: u32, level: usize) -> bool {
        self.windows[i as usize].iter().enumerate().skip(level).all(|(k, &x)| x == k as i8 + 1)
    }

    /// Index in `target` of the padded window of `i`.
    pub fn embed_index(&self, i: u32, target: &Group) -> Result<u32> {
        let w = self.element(i).embed(target.ctx)?;
        target.index_of(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn bfs_lengths(ctx: CoxeterContext) -> HashMap<Vec<i8>, usize> {
        let e = ctx.identity();
        let mut dist = HashMap::from([(e.window().to_vec(), 0usize)]);
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            let d = dist[w.window()];
            for s in ctx.generators() {
                let u = w.mul_gen(s).unwrap();
                if !dist.contains_key(u.window()) {
                    dist.insert(u.window().to_vec(), d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn contexts() -> Vec<CoxeterContext> {
        let mut v = Vec::new();
        for n in 0..=4 {
            v.push(CoxeterContext::a(n + 1));
            v.push(CoxeterContext::b(n));
            v.push(CoxeterContext::d(n));
        }
        v
    }

    #[test]
    fn orders() {
        assert_eq!(Group::build(CoxeterContext::a(3)).len(), 6);
        assert_eq!(Group::build(CoxeterContext::b(3)).len(), 48);
        assert_eq!(Group::build(CoxeterContext::d(3)).len(), 24);
        assert_eq!(Group::build(CoxeterContext::d(1)).len(), 1);
        for ctx in contexts() {
            assert_eq!(Group::build(ctx).len() as u64, ctx.order(), "{ctx}");
        }
    }

    #[test]
    fn length_statistic_matches_bfs() {
        for ctx in contexts() {
            let g = Group::build(ctx);
            let dist = bfs_lengths(ctx);
            assert_eq!(dist.len(), g.len());
            for i in 0..g.len() as u32 {
                let w = g.element(i);
                assert_eq!(w.length(), dist[w.window()], "{ctx} {w}");
                assert_eq!(g.length(i), w.length());
            }
        }
    }

    #[test]
    fn table_structure() {
        for ctx in contexts() {
            let g = Group::build(ctx);
            for i in 0..g.len() as u32 {
                let w = g.element(i);
                let word = g.word(i);
                assert_eq!(word.len(), g.length(i));
                assert_eq!(GroupElement::from_word(ctx, word).unwrap(), w);
                assert_eq!(w.reduced_word(), word);
                assert_eq!(g.length(g.inverse(i)), g.length(i));
                for slot in 0..g.gens().len() {
                    let l = g.length(g.rmul(i, slot));
                    assert!(l + 1 == g.length(i) || l == g.length(i) + 1);
                }
                if let Some((p, slot)) = g.parent(i) {
                    assert_eq!(g.rmul(p, slot), i);
                    assert_eq!(g.word(p), &word[..word.len() - 1]);
                }
            }
            assert_eq!(g.element(g.w0()), ctx.longest_element());
        }
    }

    #[test]
    fn braid_relations() {
        for ctx in [CoxeterContext::a(5), CoxeterContext::b(4), CoxeterContext::d(4)] {
            for &s in &ctx.generators() {
                for &t in &ctx.generators() {
                    let m = ctx.m(s, t) as usize;
                    let st: Vec<u8> = (0..m).map(|k| if k % 2 == 0 { s } else { t }).collect();
                    let ts: Vec<u8> = (0..m).map(|k| if k % 2 == 0 { t } else { s }).collect();
                    assert_eq!(
                        GroupElement::from_word(ctx, &st).unwrap(),
                        GroupElement::from_word(ctx, &ts).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn parabolic_count() {
        let g = Group::build(CoxeterContext::b(3));
        let inside = (0..g.len() as u32).filter(|&i| g.in_parabolic(i, 2)).count();
        assert_eq!(inside, 8);
    }

    #[test]
    fn budget() {
        assert!(matches!(
            Group::cached(CoxeterContext::b(5), 100),
            Err(Error::BudgetExceeded { size: 3840, budget: 100 })
        ));
        assert_eq!(CoxeterContext::b(3).enumerate(100).unwrap().len(), 48);
    }
}
