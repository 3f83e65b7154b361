//! Ordinary H³(Π, A) by brute force, written without any of the cochain or
//! homology machinery. Used to cross-check the Γ-trivial case.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::PiModule;

/// Order of H³(Π, A) from normalized cochains, or `None` if |A|^((n-1)^3)
/// exceeds `limit`.
pub fn ordinary_h3_order(module: &PiModule, limit: u64) -> Option<u64> {
    let n = module.pi.order();
    let a = &module.a;
    let q = a.order();
    let free3: Vec<(usize, usize, usize)> = (1..n)
        .flat_map(|x| (1..n).flat_map(move |y| (1..n).map(move |z| (x, y, z))))
        .collect();
    let free2: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    if (q as u128).pow(free3.len() as u32) > limit as u128 || (q as u128).pow(free2.len() as u32) > limit as u128 {
        return None;
    }
    let mul = |x, y| module.pi.mul(x, y);

    let fill = |code: u64, free: usize| -> Vec<usize> {
        let mut c = code;
        let mut v = vec![0; free];
        for slot in v.iter_mut().rev() {
            *slot = (c % q as u64) as usize;
            c /= q as u64;
        }
        v
    };

    let mut cocycles = 0u64;
    for code in 0..(q as u64).pow(free3.len() as u32) {
        let vals = fill(code, free3.len());
        let mut xi = vec![0usize; n * n * n];
        for (&(x, y, z), &v) in free3.iter().zip(&vals) {
            xi[(x * n + y) * n + z] = v;
        }
        let at = |x: usize, y: usize, z: usize| xi[(x * n + y) * n + z];
        let ok = (0..n).all(|w| {
            (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        // w·ξ(x,y,z) − ξ(wx,y,z) + ξ(w,xy,z) − ξ(w,x,yz) + ξ(w,x,y) = 0
                        let mut s = module.act(w, at(x, y, z));
                        s = a.sub(s, at(mul(w, x), y, z));
                        s = a.add(s, at(w, mul(x, y), z));
                        s = a.sub(s, at(w, x, mul(y, z)));
                        s = a.add(s, at(w, x, y));
                        s == 0
                    })
                })
            })
        });
        cocycles += ok as u64;
    }

    let mut boundaries = BTreeSet::new();
    for code in 0..(q as u64).pow(free2.len() as u32) {
        let vals = fill(code, free2.len());
        let mut g = vec![0usize; n * n];
        for (&(x, y), &v) in free2.iter().zip(&vals) {
            g[x * n + y] = v;
        }
        let gat = |x: usize, y: usize| g[x * n + y];
        let dg: Vec<usize> = free3
            .iter()
            .map(|&(x, y, z)| {
                let mut s = module.act(x, gat(y, z));
                s = a.sub(s, gat(mul(x, y), z));
                s = a.add(s, gat(x, mul(y, z)));
                a.sub(s, gat(x, y))
            })
            .collect();
        boundaries.insert(dg);
    }
    Some(cocycles / boundaries.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAbelianGroup, FiniteGroup};

    #[test]
    fn classical_values() {
        let m = |n, d| PiModule::trivial_action(FiniteGroup::cyclic(n), FiniteAbelianGroup::cyclic(d));
        assert_eq!(ordinary_h3_order(&m(2, 2), 1 << 20), Some(2));
        assert_eq!(ordinary_h3_order(&m(3, 3), 1 << 20), Some(3));
        // coprime orders: trivial
        assert_eq!(ordinary_h3_order(&m(2, 3), 1 << 20), Some(1));
        assert_eq!(ordinary_h3_order(&m(3, 2), 1 << 20), Some(1));
        assert_eq!(ordinary_h3_order(&m(4, 2), 1 << 10), None);
    }
}
