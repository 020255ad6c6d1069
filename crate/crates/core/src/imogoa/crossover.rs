//! Two-point crossover for receiver genes and PMX for the service order.

use rand::Rng;

/// Random inclusive segment `[a, b]` of a sequence of length `n > 0`.
pub fn random_segment<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    (a.min(b), a.max(b))
}

/// Swaps `p1[a..=b]` and `p2[a..=b]`. Duplicates are allowed.
pub fn tpc_with<T: Clone>(p1: &[T], p2: &[T], seg: (usize, usize)) -> (Vec<T>, Vec<T>) {
    let (mut c1, mut c2) = (p1.to_vec(), p2.to_vec());
    for i in seg.0..=seg.1 {
        c1[i] = p2[i].clone();
        c2[i] = p1[i].clone();
    }
    (c1, c2)
}

pub fn tpc<T: Clone, R: Rng + ?Sized>(p1: &[T], p2: &[T], rng: &mut R) -> (Vec<T>, Vec<T>) {
    if p1.is_empty() {
        return (Vec::new(), Vec::new());
    }
    tpc_with(p1, p2, random_segment(p1.len(), rng))
}

fn pmx_child(own: &[usize], donor: &[usize], seg: (usize, usize)) -> Vec<usize> {
    let n = own.len();
    // position of each value inside the donor segment
    let mut in_seg = vec![usize::MAX; n];
    for i in seg.0..=seg.1 {
        in_seg[donor[i]] = i;
    }
    let mut child = own.to_vec();
    child[seg.0..=seg.1].copy_from_slice(&donor[seg.0..=seg.1]);
    for i in (0..seg.0).chain(seg.1 + 1..n) {
        let mut v = own[i];
        while in_seg[v] != usize::MAX {
            v = own[in_seg[v]];
        }
        child[i] = v;
    }
    child
}

/// Partially matched crossover on permutations of `0..n`: each child takes
/// the other parent's segment and repairs conflicts through the segment mapping.
pub fn pmx_with(p1: &[usize], p2: &[usize], seg: (usize, usize)) -> (Vec<usize>, Vec<usize>) {
    (pmx_child(p1, p2, seg), pmx_child(p2, p1, seg))
}

pub fn pmx<R: Rng + ?Sized>(p1: &[usize], p2: &[usize], rng: &mut R) -> (Vec<usize>, Vec<usize>) {
    if p1.is_empty() {
        return (Vec::new(), Vec::new());
    }
    pmx_with(p1, p2, random_segment(p1.len(), rng))
}
