//! The crossed product Δ(θ, F): objects are elements of Π and a morphism
//! (a, σ): x → φ^σ(x) has grade σ and A-component a.

use alloc::vec;
use alloc::vec::Vec;

use crate::cochain::{self, Cochain2};
use crate::error::{Error, Result};
use crate::factorset::{derive_equivariant_structure, induce_cocycle, FactorSet};
use crate::grcat::{check_gr_functor, GrFunctorData};
use crate::report::{first_failure, tuples, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub source: usize,
    pub grade: usize,
    pub comp: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProduct {
    fs: FactorSet,
}

/// `build_crossed_product`
pub fn build_crossed_product(fs: FactorSet) -> Result<CrossedProduct> {
    if let Some(s) = fs.c.iter().position(|&c| c != 0) {
        return Err(Error::NotEnoughStrict(s));
    }
    Ok(CrossedProduct { fs })
}

impl CrossedProduct {
    pub fn factor_set(&self) -> &FactorSet {
        &self.fs
    }

    fn n(&self) -> usize {
        self.fs.n()
    }

    fn m(&self) -> usize {
        self.fs.m()
    }

    fn q(&self) -> usize {
        self.fs.base.module().a.order()
    }

    pub fn morphism(&self, source: usize, grade: usize, comp: usize) -> Morphism {
        Morphism { source, grade, comp }
    }

    pub fn target(&self, m: Morphism) -> usize {
        self.fs.phi[m.grade][m.source]
    }

    pub fn identity(&self, x: usize) -> Morphism {
        Morphism { source: x, grade: 0, comp: 0 }
    }

    /// Every morphism, ordered by (source, grade, component).
    pub fn morphisms(&self) -> Vec<Morphism> {
        tuples(&[self.n(), self.m(), self.q()])
            .map(|w| Morphism { source: w[0], grade: w[1], comp: w[2] })
            .collect()
    }

    /// Hom(x, y)
    pub fn hom(&self, x: usize, y: usize) -> Vec<Morphism> {
        (0..self.m())
            .filter(|&s| self.fs.phi[s][x] == y)
            .flat_map(|s| (0..self.q()).map(move |a| Morphism { source: x, grade: s, comp: a }))
            .collect()
    }

    /// `compose_graded`: `m1` first, then `m2`.
    /// (a, σ) then (b, τ) at x is (b + f^τ(a) − t^{τ,σ}(x), τσ).
    pub fn compose(&self, m1: Morphism, m2: Morphism) -> Result<Morphism> {
        if self.target(m1) != m2.source {
            return Err(Error::NotComposable);
        }
        let a = &self.fs.base.module().a;
        let (s, t) = (m1.grade, m2.grade);
        let comp = a.sub(a.add(m2.comp, self.fs.f[t][m1.comp]), self.fs.t[t][s][m1.source]);
        Ok(Morphism { source: m1.source, grade: self.fs.gamma.mul(t, s), comp })
    }

    /// `tensor_graded`: (a, σ) at x ⊗ (b, σ) at y is
    /// (f̃^σ(x, y) + a + (σx)·b, σ) at xy.
    pub fn tensor(&self, m1: Morphism, m2: Morphism) -> Result<Morphism> {
        if m1.grade != m2.grade {
            return Err(Error::GradeMismatch(m1.grade, m2.grade));
        }
        let module = self.fs.base.module();
        let a = &module.a;
        let (s, x, y) = (m1.grade, m1.source, m2.source);
        let mut comp = a.add(self.fs.ftilde[s][x * self.n() + y], m1.comp);
        comp = a.add(comp, module.act(self.fs.phi[s][x], m2.comp));
        Ok(Morphism { source: module.pi.mul(x, y), grade: s, comp })
    }

    /// Associativity constraint (xy)z → x(yz), of grade 1.
    pub fn associator(&self, x: usize, y: usize, z: usize) -> Morphism {
        let pi = &self.fs.base.module().pi;
        Morphism { source: pi.mul(pi.mul(x, y), z), grade: 0, comp: self.fs.base.xi_at(x, y, z) }
    }

    /// All two-sided inverses of `m`.
    pub fn inverses(&self, m: Morphism) -> Vec<Morphism> {
        let y = self.target(m);
        let sinv = self.fs.gamma.inv(m.grade);
        (0..self.q())
            .map(|b| Morphism { source: y, grade: sinv, comp: b })
            .filter(|&w| {
                self.compose(m, w) == Ok(self.identity(m.source)) && self.compose(w, m) == Ok(self.identity(y))
            })
            .collect()
    }
}

fn then(d: &CrossedProduct, ms: &[Morphism]) -> Result<Morphism> {
    ms[1..].iter().try_fold(ms[0], |acc, &m| d.compose(acc, m))
}

fn flat(m: Morphism) -> [usize; 3] {
    [m.source, m.grade, m.comp]
}

/// `verify_crossed_product`: associativity, identity, grading, kernel_iso,
/// interchange, associator_naturality and pentagon, each exhaustive with
/// its first witness.
pub fn verify_crossed_product(d: &CrossedProduct) -> Report {
    let (n, m, q) = (d.n(), d.m(), d.q());
    let fs = &d.fs;
    let module = fs.base.module();
    let (pi, gam) = (&module.pi, &fs.gamma);
    let mut r = Report::new();

    // x, σ, τ, γ, a, b, c: (a,σ) at x, then (b,τ), then (c,γ)
    r.push(
        "associativity",
        first_failure(tuples(&[n, m, m, m, q, q, q]), |w| {
            let m1 = d.morphism(w[0], w[1], w[4]);
            let m2 = d.morphism(d.target(m1), w[2], w[5]);
            let m3 = d.morphism(d.target(m2), w[3], w[6]);
            let left = d.compose(m1, m2).and_then(|p| d.compose(p, m3));
            let right = d.compose(m2, m3).and_then(|p| d.compose(m1, p));
            left.is_ok() && left == right
        }),
    );
    r.push(
        "identity",
        d.morphisms().into_iter().find_map(|f| {
            let ok = d.compose(d.identity(f.source), f) == Ok(f) && d.compose(f, d.identity(d.target(f))) == Ok(f);
            (!ok).then(|| flat(f).to_vec())
        }),
    );

    // grades multiply, identities have grade 1, and every morphism has a
    // unique inverse (so (0, σ) out of x witnesses stability)
    let functorial = first_failure(tuples(&[n, m, m, q, q]), |w| {
        let m1 = d.morphism(w[0], w[1], w[3]);
        let m2 = d.morphism(d.target(m1), w[2], w[4]);
        d.compose(m1, m2).map(|p| p.grade) == Ok(gam.mul(w[2], w[1]))
    });
    let stable = d.morphisms().into_iter().find_map(|f| (d.inverses(f).len() != 1).then(|| flat(f).to_vec()));
    let ids = (0..n).find(|&x| d.identity(x).grade != 0).map(|x| vec![x]);
    r.push("grading", functorial.or(stable).or(ids));

    // j(x, u) = (u, 1): preserves composition and tensor, and hits every
    // grade-1 morphism exactly once
    let base = &fs.base;
    let j = |g: crate::grcat::GrMorphism| Morphism { source: g.object, grade: 0, comp: g.comp };
    let kernel_compose = first_failure(tuples(&[n, q, q]), |w| {
        let (u, v) = (base.hom(w[0], w[0])[w[1]], base.hom(w[0], w[0])[w[2]]);
        base.compose(u, v).map(j) == d.compose(j(u), j(v))
    });
    let kernel_tensor = first_failure(tuples(&[n, n, q, q]), |w| {
        let (u, v) = (base.hom(w[0], w[0])[w[2]], base.hom(w[1], w[1])[w[3]]);
        Ok(j(base.tensor(u, v))) == d.tensor(j(u), j(v))
    });
    let grade_one: Vec<Morphism> = d.morphisms().into_iter().filter(|f| f.grade == 0).collect();
    let mut images: Vec<Morphism> = (0..n).flat_map(|x| base.hom(x, x)).map(j).collect();
    images.sort();
    let bijective = (images != grade_one).then(Vec::new);
    r.push("kernel_iso", kernel_compose.or(kernel_tensor).or(bijective));

    // (m1 ⊗ n1) then (m2 ⊗ n2) = (m1 then m2) ⊗ (n1 then n2)
    r.push(
        "interchange",
        first_failure(tuples(&[n, n, m, m, q, q, q, q]), |w| {
            let (x, y, s, t) = (w[0], w[1], w[2], w[3]);
            let m1 = d.morphism(x, s, w[4]);
            let m2 = d.morphism(d.target(m1), t, w[5]);
            let n1 = d.morphism(y, s, w[6]);
            let n2 = d.morphism(d.target(n1), t, w[7]);
            let left = d.tensor(m1, n1).and_then(|a| d.tensor(m2, n2).and_then(|b| d.compose(a, b)));
            let right = d.compose(m1, m2).and_then(|a| d.compose(n1, n2).and_then(|b| d.tensor(a, b)));
            left.is_ok() && left == right
        }),
    );

    // ((m1 ⊗ m2) ⊗ m3) then a = a then (m1 ⊗ (m2 ⊗ m3)), all of grade σ
    r.push(
        "associator_naturality",
        first_failure(tuples(&[m, n, n, n, q, q, q]), |w| {
            let s = w[0];
            let (m1, m2, m3) = (d.morphism(w[1], s, w[4]), d.morphism(w[2], s, w[5]), d.morphism(w[3], s, w[6]));
            let (x, y, z) = (w[1], w[2], w[3]);
            let (sx, sy, sz) = (d.target(m1), d.target(m2), d.target(m3));
            let left = d
                .tensor(m1, m2)
                .and_then(|p| d.tensor(p, m3))
                .and_then(|p| d.compose(p, d.associator(sx, sy, sz)));
            let right = d
                .tensor(m2, m3)
                .and_then(|p| d.tensor(m1, p))
                .and_then(|p| d.compose(d.associator(x, y, z), p));
            left.is_ok() && left == right
        }),
    );

    // ((xy)z)t → x(y(zt)) both ways
    r.push(
        "pentagon",
        first_failure(tuples(&[n, n, n, n]), |w| {
            let (x, y, z, t) = (w[0], w[1], w[2], w[3]);
            let left = then(d, &[d.associator(pi.mul(x, y), z, t), d.associator(x, y, pi.mul(z, t))]);
            let right = d.tensor(d.associator(x, y, z), d.identity(t)).and_then(|p| {
                let q = d.tensor(d.identity(x), d.associator(y, z, t))?;
                then(d, &[p, d.associator(x, pi.mul(y, z), t), q])
            });
            left.is_ok() && left == right
        }),
    );
    r
}

/// Functor K: Δ1 → Δ2 that is the identity on objects and grades, shifts
/// components by −k_pg(x, σ), and has comparison K̃_{x,y} = k_pp(x, y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFunctor {
    pub object_map: Vec<usize>,
    pub k: Cochain2,
}

impl GradedFunctor {
    pub fn apply(&self, d2: &CrossedProduct, m: Morphism) -> Morphism {
        let a = &d2.fs.base.module().a;
        Morphism {
            source: self.object_map[m.source],
            grade: m.grade,
            comp: a.sub(m.comp, self.k.pg_at(m.source, m.grade)),
        }
    }

    pub fn comparison(&self, x: usize, y: usize) -> usize {
        self.k.pp_at(x, y)
    }
}

/// `build_equivalence`: requires h(Δ2) − h(Δ1) = ∂k, then verifies the
/// resulting functor is grade preserving, functorial, monoidal, fully
/// faithful and essentially surjective.
pub fn build_equivalence(d1: &CrossedProduct, d2: &CrossedProduct, k: &Cochain2) -> Result<(GradedFunctor, Report)> {
    let (f1, f2) = (&d1.fs, &d2.fs);
    if f1.base.module() != f2.base.module() || f1.gamma != f2.gamma || f1.phi != f2.phi || f1.f != f2.f {
        return Err(Error::ModuleMismatch);
    }
    let em = derive_equivariant_structure(f1)?;
    if !cochain::Shaped::fits(k, &em) || k.normalization_failure().is_some() {
        return Err(Error::Shape("comparison cochain does not match the module".into()));
    }
    let diff = cochain::combine(&em, &induce_cocycle(f2)?, -1, &induce_cocycle(f1)?)?;
    if cochain::d2(&em, k) != diff {
        return Err(Error::NotCoboundaryRelated);
    }
    let (n, m, q) = (d1.n(), d1.m(), d1.q());
    let kf = GradedFunctor { object_map: (0..n).collect(), k: k.clone() };
    let apply = |f: Morphism| kf.apply(d2, f);
    let all = d1.morphisms();
    let mut r = Report::new();

    r.push(
        "grade_preserving",
        all.iter().find(|&&f| apply(f).grade != f.grade || d2.target(apply(f)) != kf.object_map[d1.target(f)]).map(|&f| flat(f).to_vec()),
    );
    let composition = first_failure(tuples(&[n, m, m, q, q]), |w| {
        let m1 = d1.morphism(w[0], w[1], w[3]);
        let m2 = d1.morphism(d1.target(m1), w[2], w[4]);
        d1.compose(m1, m2).map(apply) == d2.compose(apply(m1), apply(m2))
    });
    let identities = (0..n).find(|&x| apply(d1.identity(x)) != d2.identity(kf.object_map[x])).map(|x| vec![x]);
    r.push("functorial", composition.or(identities));

    // K(m1 ⊗ m2) then K̃ at the targets = K̃ at the sources then Km1 ⊗ Km2
    let natural = first_failure(tuples(&[m, n, n, q, q]), |w| {
        let (m1, m2) = (d1.morphism(w[1], w[0], w[3]), d1.morphism(w[2], w[0], w[4]));
        let (x, y) = (m1.source, m2.source);
        let (sx, sy) = (d1.target(m1), d1.target(m2));
        let pi = &f1.base.module().pi;
        let kt = |p: usize, q: usize| Morphism { source: pi.mul(p, q), grade: 0, comp: kf.comparison(p, q) };
        let left = d1.tensor(m1, m2).map(apply).and_then(|p| d2.compose(p, kt(sx, sy)));
        let right = d2.tensor(apply(m1), apply(m2)).and_then(|p| d2.compose(kt(x, y), p));
        left.is_ok() && left == right
    });
    let fd = GrFunctorData { phi: (0..n).collect(), f: (0..q).collect(), gtilde: k.pp.clone(), chat: 0 };
    let laws = check_gr_functor(&f1.base, &f2.base, &fd);
    let coherence = laws.failures().next().map(|c| c.witness.clone().unwrap_or_default());
    r.push("monoidal", natural.or(coherence));

    let faithful = tuples(&[n, n]).find_map(|w| {
        let (x, y) = (w[0], w[1]);
        let mut img: Vec<Morphism> = d1.hom(x, y).into_iter().map(apply).collect();
        img.sort();
        let mut target = d2.hom(kf.object_map[x], kf.object_map[y]);
        target.sort();
        (img != target).then(|| vec![x, y])
    });
    r.push("fully_faithful", faithful);
    r.push(
        "essentially_surjective",
        (0..n).find(|&y| !kf.object_map.contains(&y)).map(|y| vec![y]),
    );
    Ok((kf, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{EquivariantModule, FiniteAbelianGroup, FiniteGroup};
    use crate::factorset::factor_set_from_cocycle;
    use crate::grcat::{build_gr_category, GrCategory};
    use crate::homology::{enumerate_cocycle_slots, Layout, DEFAULT_CAP};

    fn z2_cubed() -> EquivariantModule {
        EquivariantModule::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2), FiniteAbelianGroup::cyclic(2))
    }

    fn with_theta() -> CrossedProduct {
        let em = z2_cubed();
        let mut fs = FactorSet::trivial(GrCategory::strict(em.base.clone()), em.gamma.clone());
        fs.t[1][1][1] = 1;
        build_crossed_product(fs).unwrap()
    }

    #[test]
    fn composition_examples() {
        let em = z2_cubed();
        let d = build_crossed_product(FactorSet::trivial(GrCategory::strict(em.base.clone()), em.gamma.clone())).unwrap();
        assert_eq!(d.compose(d.morphism(1, 1, 1), d.morphism(1, 1, 0)), Ok(d.morphism(1, 0, 1)));
        let f = d.morphism(1, 1, 1);
        assert_eq!(d.compose(d.identity(1), f), Ok(f));
        assert_eq!(d.compose(f, d.identity(1)), Ok(f));

        let d = with_theta();
        assert_eq!(d.compose(d.morphism(1, 1, 0), d.morphism(1, 1, 0)), Ok(d.morphism(1, 0, 1)));
        assert_eq!(d.inverses(d.morphism(1, 1, 0)), vec![d.morphism(1, 1, 1)]);
    }

    #[test]
    fn not_composable() {
        let em = EquivariantModule::from_parts(
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(2),
            FiniteAbelianGroup::cyclic(3),
            vec![vec![0, 1, 2]; 3],
            vec![vec![0, 1, 2], vec![0, 2, 1]],
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        let d = build_crossed_product(FactorSet::strict_over(GrCategory::strict(em.base.clone()), &em)).unwrap();
        let f = d.morphism(1, 1, 0);
        assert_eq!(d.target(f), 2);
        assert_eq!(d.compose(f, d.morphism(1, 0, 0)), Err(Error::NotComposable));
        assert_eq!(d.tensor(f, d.identity(1)), Err(Error::GradeMismatch(1, 0)));
        assert_eq!(d.hom(1, 2).len(), 3);
        assert!(verify_crossed_product(&d).passed());
    }

    #[test]
    fn tensor_examples() {
        let em = z2_cubed();
        let mut fs = FactorSet::trivial(GrCategory::strict(em.base.clone()), em.gamma.clone());
        fs.ftilde[1][3] = 1;
        let d = build_crossed_product(fs.clone()).unwrap();
        assert_eq!(d.tensor(d.morphism(1, 1, 0), d.morphism(1, 1, 0)), Ok(d.morphism(0, 1, 1)));
        let trivial = build_crossed_product(FactorSet::trivial(fs.base.clone(), em.gamma.clone())).unwrap();
        assert_eq!(trivial.tensor(trivial.morphism(1, 1, 1), trivial.morphism(1, 1, 1)), Ok(trivial.morphism(0, 1, 0)));
    }

    #[test]
    fn requires_enough_strict() {
        let em = z2_cubed();
        let mut fs = FactorSet::trivial(GrCategory::strict(em.base.clone()), em.gamma.clone());
        fs.c[1] = 1;
        assert_eq!(build_crossed_product(fs), Err(Error::NotEnoughStrict(1)));
    }

    #[test]
    fn every_cocycle_gives_a_crossed_product() {
        let em = z2_cubed();
        let l = Layout::of(&em);
        let pi_mod = em.base.clone();
        for xi_value in 0..2 {
            let mut xi = vec![0; 8];
            xi[7] = xi_value;
            let base = build_gr_category(pi_mod.clone(), xi.clone()).unwrap();
            for v in enumerate_cocycle_slots(&em, Some(&xi), DEFAULT_CAP).unwrap() {
                let fs = factor_set_from_cocycle(&base, &em, &l.c3_from_slots(&v)).unwrap();
                let d = build_crossed_product(fs).unwrap();
                let r = verify_crossed_product(&d);
                assert!(r.passed(), "{v:?} {r:?}");
                assert_eq!(d.morphisms().len(), 8);
            }
        }
    }

    #[test]
    fn corrupted_theta_breaks_associativity() {
        // Γ negates A = ℤ/3, so t^{s,s}(p) = 1 violates the t-cocycle identity
        let em = EquivariantModule::from_parts(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(2),
            FiniteAbelianGroup::cyclic(3),
            vec![vec![0, 1, 2]; 2],
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        let mut fs = FactorSet::strict_over(GrCategory::strict(em.base.clone()), &em);
        fs.t[1][1][1] = 1;
        assert!(!crate::factorset::validate_factor_set(&fs, true).passes("theta_cocycle"));
        let d = build_crossed_product(fs).unwrap();
        let r = verify_crossed_product(&d);
        assert!(!r.passes("associativity"));
        let w = r.get("associativity").unwrap().witness.clone().unwrap();
        let m1 = d.morphism(w[0], w[1], w[4]);
        let m2 = d.morphism(d.target(m1), w[2], w[5]);
        let m3 = d.morphism(d.target(m2), w[3], w[6]);
        assert_ne!(
            d.compose(d.compose(m1, m2).unwrap(), m3),
            d.compose(m1, d.compose(m2, m3).unwrap())
        );
    }

    #[test]
    fn corrupted_ftilde_breaks_naturality() {
        let em = EquivariantModule::trivial(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), FiniteAbelianGroup::cyclic(3));
        let mut fs = FactorSet::trivial(GrCategory::strict(em.base.clone()), em.gamma.clone());
        fs.ftilde[1][4] = 1;
        assert!(!crate::factorset::validate_factor_set(&fs, true).passes("hexagon"));
        let r = verify_crossed_product(&build_crossed_product(fs).unwrap());
        assert!(!r.passes("associator_naturality"));
    }

    #[test]
    fn equivalence_examples() {
        let em = z2_cubed();
        let strict = GrCategory::strict(em.base.clone());
        let d = build_crossed_product(FactorSet::trivial(strict.clone(), em.gamma.clone())).unwrap();
        let (k, r) = build_equivalence(&d, &d, &Cochain2::zero(&em)).unwrap();
        assert!(r.passed());
        assert_eq!(k.object_map, vec![0, 1]);

        // base ξ with ξ(p,p,p) = 1 is not a coboundary at 2-2-2
        let mut xi = vec![0; 8];
        xi[7] = 1;
        let twisted = build_gr_category(em.base.clone(), xi).unwrap();
        let d2 = build_crossed_product(FactorSet::trivial(twisted, em.gamma.clone())).unwrap();
        let l = Layout::of(&em);
        for code in 0..(1 << l.c2()) {
            let v: Vec<usize> = (0..l.c2()).map(|i| (code >> i) & 1).collect();
            assert_eq!(build_equivalence(&d, &d2, &l.c2_from_slots(&v)).map(|_| ()), Err(Error::NotCoboundaryRelated));
        }
    }
}
