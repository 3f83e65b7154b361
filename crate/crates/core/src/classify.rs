//! Exhaustive check of the bijection between classes of factor sets over a
//! fixed 𝒮(Π, A, ξ) and the cohomology classes of cocycles restricting to ξ.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::EquivariantModule;
use crate::cochain::{self, Cochain3};
use crate::crossed::{build_crossed_product, build_equivalence, verify_crossed_product, CrossedProduct};
use crate::error::{Error, Result};
use crate::factorset::{
    cohomologous_with, factor_set_from_cocycle, induce_cocycle, validate_factor_set, CohomologyWitness, FactorSet,
};
use crate::grcat::GrCategory;
use crate::homology::{coboundary_echelon, enumerate_cocycle_slots, to_coords, CoboundarySolver, Layout};
use crate::report::Report;

/// `enumerate_z3`: every normalized cocycle, optionally with Π³ part fixed,
/// in lexicographic order.
pub fn enumerate_z3(em: &EquivariantModule, fixed_xi: Option<&[usize]>, cap: u64) -> Result<Vec<Cochain3>> {
    let l = Layout::of(em);
    Ok(enumerate_cocycle_slots(em, fixed_xi, cap)?.iter().map(|v| l.c3_from_slots(v)).collect())
}

/// `partition_classes`: classes under h ∼ h′ ⟺ h − h′ ∈ B³, each sorted so
/// its lexicographic minimum comes first, classes ordered by that minimum.
pub fn partition_classes(em: &EquivariantModule, cocycles: &[Cochain3]) -> Result<Vec<Vec<Cochain3>>> {
    let l = Layout::of(em);
    let b = coboundary_echelon(em);
    let mut classes: BTreeMap<Vec<i64>, Vec<Cochain3>> = BTreeMap::new();
    for h in cocycles {
        if !cochain::Shaped::fits(h, em) {
            return Err(Error::ModuleMismatch);
        }
        let key = b.canonical(&to_coords(em.a(), &l.c3_slots(h)));
        classes.entry(key).or_default().push(h.clone());
    }
    let mut out: Vec<Vec<Cochain3>> = classes
        .into_values()
        .map(|mut c| {
            c.sort();
            c
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Every u with u(x, 1) = 0, in lexicographic order of the table.
pub fn all_witnesses(n: usize, m: usize, q: usize, cap: u64) -> Result<Vec<CohomologyWitness>> {
    let free: Vec<usize> = (0..n * m).filter(|i| i % m != 0).collect();
    let count = (q as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::CapExceeded(cap));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut w = CohomologyWitness::zero(n, m);
    loop {
        out.push(w.clone());
        let Some(k) = free.iter().rposition(|&i| w.u[i] + 1 < q) else { break };
        w.u[free[k]] += 1;
        free[k + 1..].iter().for_each(|&i| w.u[i] = 0);
    }
    Ok(out)
}

/// FNV-1a over the composition and tensor tables of a crossed product.
pub fn fingerprint(d: &CrossedProduct) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |v: usize| {
        for byte in (v as u64).to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    };
    let all = d.morphisms();
    for &f in &all {
        for &g in &all {
            match d.compose(f, g) {
                Ok(h) => [h.source, h.grade, h.comp].into_iter().for_each(&mut feed),
                Err(_) => feed(usize::MAX),
            }
            match d.tensor(f, g) {
                Ok(h) => [h.source, h.grade, h.comp].into_iter().for_each(&mut feed),
                Err(_) => feed(usize::MAX),
            }
        }
    }
    format!("{hash:016x}")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub cocycle: Cochain3,
    pub factor_set: FactorSet,
    pub fingerprint: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub module: EquivariantModule,
    pub xi: Vec<usize>,
    pub cocycle_count: usize,
    pub cohomology_classes: usize,
    pub factor_set_classes: usize,
    /// Classes of crossed products joined by a graded equivalence whose
    /// base part may be any type-(id, id) autoequivalence.
    pub congruence_classes: usize,
    pub pairing: Vec<Pairing>,
    pub checks: Report,
    pub bijection_verified: bool,
}

/// `verify_omega`
pub fn verify_omega(em: &EquivariantModule, base: &GrCategory, cap: u64) -> Result<ClassificationReport> {
    if base.module() != &em.base {
        return Err(Error::ModuleMismatch);
    }
    let cocycles = enumerate_z3(em, Some(base.xi()), cap)?;
    let h_classes = partition_classes(em, &cocycles)?;
    let class_of = |h: &Cochain3| h_classes.iter().position(|c| c.contains(h));

    let mut checks = Report::new();
    let factor_sets = cocycles
        .iter()
        .map(|h| factor_set_from_cocycle(base, em, h))
        .collect::<Result<Vec<_>>>()?;
    checks.push(
        "factor_sets_valid",
        factor_sets.iter().position(|fs| !validate_factor_set(fs, false).passed()).map(|i| alloc::vec![i]),
    );

    // factor-set classes under the cohomologous relation, in enumeration order
    let solver = CoboundarySolver::new(em, true);
    let mut fs_classes: Vec<Vec<usize>> = Vec::new();
    for (i, fs) in factor_sets.iter().enumerate() {
        let mut home = None;
        for (k, class) in fs_classes.iter().enumerate() {
            if cohomologous_with(em, &solver, &factor_sets[class[0]], fs)?.is_some() {
                home = Some(k);
                break;
            }
        }
        match home {
            Some(k) => fs_classes[k].push(i),
            None => fs_classes.push(alloc::vec![i]),
        }
    }

    let image: Vec<Option<usize>> =
        factor_sets.iter().map(|fs| induce_cocycle(fs).ok().and_then(|h| class_of(&h))).collect();

    // cohomologous factor sets induce cohomologous cocycles
    let well_defined = fs_classes.iter().find_map(|class| {
        class.iter().find(|&&i| image[i].is_none() || image[i] != image[class[0]]).map(|&i| alloc::vec![class[0], i])
    });
    checks.push("well_defined", well_defined);

    // every cohomology class is hit by some factor set
    let surjective = (0..h_classes.len()).find(|&k| !image.contains(&Some(k)));
    checks.push("surjective", surjective.map(|k| alloc::vec![k]));

    // distinct factor-set classes land in distinct cohomology classes
    let images: Vec<Option<usize>> = fs_classes.iter().map(|class| image[class[0]]).collect();
    let injective = (0..images.len())
        .flat_map(|i| (i + 1..images.len()).map(move |j| (i, j)))
        .find(|&(i, j)| images[i] == images[j])
        .map(|(i, j)| alloc::vec![i, j]);
    checks.push("injective", injective);

    let mut pairing = Vec::new();
    let mut crossed_failure = None;
    for (k, class) in h_classes.iter().enumerate() {
        let h = &class[0];
        let fs = factor_set_from_cocycle(base, em, h)?;
        let d = build_crossed_product(fs.clone())?;
        if crossed_failure.is_none() && !verify_crossed_product(&d).passed() {
            crossed_failure = Some(alloc::vec![k]);
        }
        pairing.push(Pairing { cocycle: h.clone(), factor_set: fs, fingerprint: fingerprint(&d) });
    }
    checks.push("crossed_products", crossed_failure);

    // congruence: K_Δ with comparison k solving ∂k = h′ − h over all of C²
    let full = CoboundarySolver::new(em, false);
    let products =
        factor_sets.iter().map(|fs| build_crossed_product(fs.clone())).collect::<Result<Vec<_>>>()?;
    let mut congruence: Vec<usize> = Vec::new();
    let mut unwitnessed = None;
    for i in 0..cocycles.len() {
        let mut home = false;
        for &j in &congruence {
            let diff = cochain::combine(em, &cocycles[i], -1, &cocycles[j])?;
            if let Some(k) = full.solve(em, &diff)? {
                home = true;
                if unwitnessed.is_none() && !build_equivalence(&products[j], &products[i], &k)?.1.passed() {
                    unwitnessed = Some(alloc::vec![j, i]);
                }
                break;
            }
        }
        if !home {
            congruence.push(i);
        }
    }
    checks.push("congruence_equivalences", unwitnessed);

    let one_to_one = images.iter().all(Option::is_some) && h_classes.len() == fs_classes.len();
    let bijection_verified =
        one_to_one && ["well_defined", "surjective", "injective"].iter().all(|name| checks.passes(name));
    Ok(ClassificationReport {
        module: em.clone(),
        xi: base.xi().to_vec(),
        cocycle_count: cocycles.len(),
        cohomology_classes: h_classes.len(),
        factor_set_classes: fs_classes.len(),
        congruence_classes: congruence.len(),
        pairing,
        checks,
        bijection_verified,
    })
}
