//! Small groups and every valid action combination between them, for
//! exhaustive scans.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    validate_action, AutAction, Carrier, EquivariantModule, FiniteAbelianGroup, FiniteGroup, PiModule,
};

/// The symmetric group on three letters, elements listed as permutations
/// of (0 1 2) in lexicographic order, composed right to left.
pub fn symmetric3() -> FiniteGroup {
    let perms = permutations(3);
    let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let rows: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| perms.iter().map(|b| idx(&[a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    FiniteGroup::from_table(&rows).unwrap()
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every action of `actor` on `carrier` by automorphisms, found by trying
/// all tuples of automorphisms.
pub fn all_actions<C: Carrier>(actor: &FiniteGroup, carrier: &C) -> Vec<AutAction> {
    let n = carrier.size();
    let autos: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|a| (0..n).all(|b| p[carrier.op(a, b)] == carrier.op(p[a], p[b]))))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; actor.order()];
    loop {
        let maps = choice.iter().map(|&c| autos[c].clone()).collect();
        if let Ok(act) = validate_action(actor, carrier, maps) {
            out.push(act);
        }
        let Some(i) = (0..choice.len()).rev().find(|&i| choice[i] + 1 < autos.len()) else { break };
        choice[i] += 1;
        choice[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
    out
}

/// Every equivariant module on the given groups.
pub fn all_modules(pi: &FiniteGroup, gamma: &FiniteGroup, a: &FiniteAbelianGroup) -> Vec<EquivariantModule> {
    let mut out = Vec::new();
    for pa in all_actions(pi, a) {
        let base = PiModule { pi: pi.clone(), a: a.clone(), pi_on_a: pa };
        for gp in all_actions(gamma, pi) {
            for ga in all_actions(gamma, a) {
                if let Ok(em) = EquivariantModule::new(base.clone(), gamma.clone(), gp.clone(), ga) {
                    out.push(em);
                }
            }
        }
    }
    out
}

/// |Π|, |Γ| ∈ {1, 2, 3}, A ∈ {ℤ/2, ℤ/3}, every valid action combination.
pub fn desk_configs() -> Vec<EquivariantModule> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            for d in [2, 3] {
                out.extend(all_modules(
                    &FiniteGroup::cyclic(n),
                    &FiniteGroup::cyclic(m),
                    &FiniteAbelianGroup::cyclic(d),
                ));
            }
        }
    }
    out
}
