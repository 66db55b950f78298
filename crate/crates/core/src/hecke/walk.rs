//! Dense coefficient vectors and walks over the reduced-word trie.

use super::HeckeAlgebra;
use crate::coeffring::Coeff;
use crate::coxeter::Group;

/// `c <- c t_s`.
pub(crate) fn right_t<R: Coeff>(alg: &HeckeAlgebra<R>, c: &mut [R], slot: usize) {
    act(c, alg.group().up_pairs(slot), alg.alpha_slot(slot), false);
}

/// `c <- c t_s^-1`.
pub(crate) fn right_t_inv<R: Coeff>(alg: &HeckeAlgebra<R>, c: &mut [R], slot: usize) {
    act(c, alg.group().up_pairs(slot), alg.alpha_slot(slot), true);
}

/// `c <- t_s c`.
pub(crate) fn left_t<R: Coeff>(alg: &HeckeAlgebra<R>, c: &mut [R], slot: usize) {
    act(c, alg.group().left_up_pairs(slot), alg.alpha_slot(slot), false);
}

/// `c <- c t_s` for coordinates in the basis `T_y = t_{y^-1}^-1`, where
/// `T_x T_s = T_xs`, `T_xs T_s = T_x - alpha T_xs` and `t_s = T_s + alpha`.
pub(crate) fn right_t_in_inverse_basis<R: Coeff>(alg: &HeckeAlgebra<R>, c: &mut [R], slot: usize) {
    let alpha = alg.alpha_slot(slot);
    for &(x, xs) in alg.group().up_pairs(slot) {
        let (x, xs) = (x as usize, xs as usize);
        if c[x].is_zero() && c[xs].is_zero() {
            continue;
        }
        let cx = std::mem::replace(&mut c[x], R::zero());
        let mut nx = std::mem::replace(&mut c[xs], R::zero());
        nx.add_mul(alpha, &cx);
        c[x] = nx;
        c[xs] = cx;
    }
}

/// On a pair `x < xs`: `t_x t_s = t_xs`, `t_xs t_s = t_x + alpha t_xs`, and
/// `t_s^-1 = t_s - alpha`.
#[inline]
fn act<R: Coeff>(c: &mut [R], pairs: &[(u32, u32)], alpha: &R, inverse: bool) {
    for &(x, xs) in pairs {
        let (x, xs) = (x as usize, xs as usize);
        if c[x].is_zero() && c[xs].is_zero() {
            continue;
        }
        let cx = std::mem::replace(&mut c[x], R::zero());
        let cxs = std::mem::replace(&mut c[xs], R::zero());
        if inverse {
            let mut nx = cxs;
            if !alpha.is_zero() {
                nx = nx.sub(&alpha.mul(&cx));
            }
            c[x] = nx;
            c[xs] = cx;
        } else {
            let mut nxs = cx;
            nxs.add_mul(alpha, &cxs);
            c[xs] = nxs;
            c[x] = cxs;
        }
    }
}

/// Depth-first walk of the trie restricted to the ancestors of `targets`.
/// `state` starts at the root; moving to child `w s` applies `step(slot)`;
/// `visit` is called on every target.
pub(crate) fn walk<S: Clone>(
    group: &Group,
    targets: &[u32],
    start: S,
    step: &dyn Fn(&mut S, usize),
    visit: &mut dyn FnMut(u32, &S),
) {
    if targets.is_empty() {
        return;
    }
    // 0: skip, 1: on a path to a target, 2: target
    let mut mark = vec![0u8; group.len()];
    for &t in targets {
        mark[t as usize] = 2;
        let mut x = t;
        while let Some((p, _)) = group.parent(x) {
            if mark[p as usize] != 0 {
                break;
            }
            mark[p as usize] = 1;
            x = p;
        }
    }
    let mut state = start;
    rec(group, 0, &mark, &mut state, step, visit);
}

fn rec<S: Clone>(
    group: &Group,
    node: u32,
    mark: &[u8],
    state: &mut S,
    step: &dyn Fn(&mut S, usize),
    visit: &mut dyn FnMut(u32, &S),
) {
    if mark[node as usize] == 2 {
        visit(node, state);
    }
    let kids: Vec<(usize, u32)> =
        group.children(node).iter().copied().filter(|&(_, c)| mark[c as usize] != 0).collect();
    let last = kids.len().saturating_sub(1);
    for (k, (slot, child)) in kids.into_iter().enumerate() {
        if k == last {
            step(state, slot);
            rec(group, child, mark, state, step, visit);
        } else {
            let mut s2 = state.clone();
            step(&mut s2, slot);
            rec(group, child, mark, &mut s2, step, visit);
        }
    }
}

pub(crate) fn unit_vector<R: Coeff>(n: usize, i: usize) -> Vec<R> {
    let mut v = vec![R::zero(); n];
    v[i] = R::one();
    v
}

/// `tau(t_w) = bar([t_e] bar(t_w))` with `bar(t_w) = t_{s1}^-1 ... t_{sk}^-1`.
pub(crate) fn tau_vector<R: Coeff>(alg: &HeckeAlgebra<R>) -> Vec<R> {
    let n = alg.dim();
    let mut out = vec![R::zero(); n];
    let all: Vec<u32> = (0..n as u32).collect();
    walk(
        alg.group(),
        &all,
        unit_vector::<R>(n, 0),
        &|c: &mut Vec<R>, slot| right_t_inv(alg, c, slot),
        &mut |w, c: &Vec<R>| out[w as usize] = c[0].bar(),
    );
    out
}
