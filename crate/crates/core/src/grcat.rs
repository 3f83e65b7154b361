//! The categorical group 𝒮(Π, A, ξ): objects are elements of Π, every
//! morphism is an automorphism (x, u) with u ∈ A, and the associativity
//! constraint at (x, y, z) is (xyz, ξ(x, y, z)). Units are strict.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Carrier, PiModule};
use crate::error::{Error, Result};
use crate::report::{first_failure, tuples, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrCategory {
    module: PiModule,
    xi: Vec<usize>,
}

/// (x, u) ∈ Aut(x) = {x} × A
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrMorphism {
    pub object: usize,
    pub comp: usize,
}

/// Data of a functor of type (φ, f) together with its monoidal structure:
/// `gtilde[x*n + y]` is the A-component of F(xy) → Fx ⊗ Fy and `chat` the
/// A-component of F(1) → 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrFunctorData {
    pub phi: Vec<usize>,
    pub f: Vec<usize>,
    pub gtilde: Vec<usize>,
    pub chat: usize,
}

impl GrFunctorData {
    pub fn identity(c: &GrCategory) -> Self {
        let n = c.module.pi.order();
        Self {
            phi: (0..n).collect(),
            f: (0..c.module.a.order()).collect(),
            gtilde: vec![0; n * n],
            chat: 0,
        }
    }
}

/// First normalization failure of a Π³ table.
fn normalization_failure(n: usize, xi: &[usize]) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if (x == 0 || y == 0 || z == 0) && xi[(x * n + y) * n + z] != 0 {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// x·ξ(y,z,t) − ξ(xy,z,t) + ξ(x,yz,t) − ξ(x,y,zt) + ξ(x,y,z), the ordinary
/// 3-cocycle expression.
pub(crate) fn cocycle_defect(m: &PiModule, xi: &[usize], x: usize, y: usize, z: usize, t: usize) -> usize {
    let n = m.pi.order();
    let (g, a) = (&m.pi, &m.a);
    let at = |p: usize, q: usize, r: usize| xi[(p * n + q) * n + r];
    let mut v = m.act(x, at(y, z, t));
    v = a.sub(v, at(g.mul(x, y), z, t));
    v = a.add(v, at(x, g.mul(y, z), t));
    v = a.sub(v, at(x, y, g.mul(z, t)));
    a.add(v, at(x, y, z))
}

fn cocycle_failure(m: &PiModule, xi: &[usize]) -> Option<(usize, usize, usize, usize)> {
    let n = m.pi.order();
    tuples(&[n, n, n, n])
        .find(|w| cocycle_defect(m, xi, w[0], w[1], w[2], w[3]) != 0)
        .map(|w| (w[0], w[1], w[2], w[3]))
}

/// `build_gr_category`
pub fn build_gr_category(module: PiModule, xi: Vec<usize>) -> Result<GrCategory> {
    let n = module.pi.order();
    if xi.len() != n * n * n || xi.iter().any(|&v| v >= module.a.order()) {
        return Err(Error::Shape("xi must be a dense Π³ table of A elements".into()));
    }
    if let Some((x, y, z)) = normalization_failure(n, &xi) {
        return Err(Error::NotNormalized(x, y, z));
    }
    if let Some((x, y, z, t)) = cocycle_failure(&module, &xi) {
        return Err(Error::NotACocycle(x, y, z, t));
    }
    Ok(GrCategory { module, xi })
}

impl GrCategory {
    /// The strict category, ξ ≡ 0.
    pub fn strict(module: PiModule) -> Self {
        let n = module.pi.order();
        Self { module, xi: vec![0; n * n * n] }
    }

    pub fn module(&self) -> &PiModule {
        &self.module
    }

    pub fn xi(&self) -> &[usize] {
        &self.xi
    }

    #[inline]
    pub fn xi_at(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.module.pi.order();
        self.xi[(x * n + y) * n + z]
    }

    /// Hom(x, y): all of {x} × A when x = y, empty otherwise.
    pub fn hom(&self, x: usize, y: usize) -> Vec<GrMorphism> {
        if x != y {
            return Vec::new();
        }
        (0..self.module.a.order()).map(|comp| GrMorphism { object: x, comp }).collect()
    }

    pub fn identity(&self, x: usize) -> GrMorphism {
        GrMorphism { object: x, comp: 0 }
    }

    /// `compose_morphisms`: (x, u) ∘ (x, v) = (x, u + v)
    pub fn compose(&self, m1: GrMorphism, m2: GrMorphism) -> Result<GrMorphism> {
        if m1.object != m2.object {
            return Err(Error::ObjectMismatch(m1.object, m2.object));
        }
        Ok(GrMorphism { object: m1.object, comp: self.module.a.add(m1.comp, m2.comp) })
    }

    /// `tensor_morphisms`: (x, u) ⊗ (y, v) = (xy, u + x·v)
    pub fn tensor(&self, m1: GrMorphism, m2: GrMorphism) -> GrMorphism {
        let comp = self.module.a.add(m1.comp, self.module.act(m1.object, m2.comp));
        GrMorphism { object: self.module.pi.mul(m1.object, m2.object), comp }
    }

    pub fn associator(&self, x: usize, y: usize, z: usize) -> GrMorphism {
        let g = &self.module.pi;
        GrMorphism { object: g.mul(g.mul(x, y), z), comp: self.xi_at(x, y, z) }
    }

    /// First (w, x, y, z) where the pentagon diagram, evaluated with
    /// `compose` and `tensor`, does not commute.
    pub fn pentagon_failure(&self) -> Option<Vec<usize>> {
        let n = self.module.pi.order();
        let g = &self.module.pi;
        first_failure(tuples(&[n, n, n, n]), |w| {
            let (w0, x, y, z) = (w[0], w[1], w[2], w[3]);
            let lhs = self
                .compose(self.associator(w0, x, g.mul(y, z)), self.associator(g.mul(w0, x), y, z))
                .unwrap();
            let right = self.tensor(self.identity(w0), self.associator(x, y, z));
            let left = self.tensor(self.associator(w0, x, y), self.identity(z));
            let rhs = self
                .compose(right, self.compose(self.associator(w0, g.mul(x, y), z), left).unwrap())
                .unwrap();
            lhs == rhs
        })
    }

    /// Same condition as the pentagon, evaluated as the ordinary cocycle
    /// formula.
    pub fn cocycle_identity_failure(&self) -> Option<Vec<usize>> {
        cocycle_failure(&self.module, &self.xi).map(|(a, b, c, d)| vec![a, b, c, d])
    }
}

fn is_hom<C: Carrier>(c: &C, map: &[usize]) -> Option<Vec<usize>> {
    let n = c.size();
    first_failure(tuples(&[n, n]), |p| map[c.op(p[0], p[1])] == c.op(map[p[0]], map[p[1]]))
}

/// `check_gr_functor`: reports which of the type-(φ, f) and monoidal functor
/// laws hold for `fd` from `src` to `dst`.
pub fn check_gr_functor(src: &GrCategory, dst: &GrCategory, fd: &GrFunctorData) -> Report {
    let (sm, dm) = (&src.module, &dst.module);
    let n = sm.pi.order();
    let mut r = Report::new();
    let shape_ok = fd.phi.len() == n
        && fd.phi.iter().all(|&v| v < dm.pi.order())
        && fd.f.len() == sm.a.order()
        && fd.f.iter().all(|&v| v < dm.a.order())
        && fd.gtilde.len() == n * n
        && fd.gtilde.iter().all(|&v| v < dm.a.order())
        && fd.chat < dm.a.order();
    r.push("shape", if shape_ok { None } else { Some(Vec::new()) });
    if !shape_ok {
        return r;
    }
    let (phi, f, gt) = (&fd.phi, &fd.f, &fd.gtilde);
    let a2 = &dm.a;
    r.push("phi_homomorphism", is_hom(&sm.pi, phi));
    r.push("f_homomorphism", is_hom(&sm.a, f));
    r.push(
        "type_phi_f",
        first_failure(tuples(&[n, sm.a.order()]), |p| {
            f[sm.act(p[0], p[1])] == dm.act(phi[p[0]], f[p[1]])
        }),
    );
    r.push(
        "hexagon",
        first_failure(tuples(&[n, n, n]), |p| {
            let (x, y, z) = (p[0], p[1], p[2]);
            let g = &sm.pi;
            let mut lhs = dm.act(phi[x], gt[y * n + z]);
            lhs = a2.sub(lhs, gt[g.mul(x, y) * n + z]);
            lhs = a2.add(lhs, gt[x * n + g.mul(y, z)]);
            lhs = a2.sub(lhs, gt[x * n + y]);
            let rhs = a2.sub(dst.xi_at(phi[x], phi[y], phi[z]), f[src.xi_at(x, y, z)]);
            lhs == rhs
        }),
    );
    r.push(
        "right_unit",
        first_failure(tuples(&[n]), |p| a2.add(dm.act(phi[p[0]], fd.chat), gt[p[0] * n]) == 0),
    );
    r.push("left_unit", first_failure(tuples(&[n]), |p| a2.add(fd.chat, gt[p[0]]) == 0));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAbelianGroup, FiniteGroup};

    fn module(n: usize, d: u64, negate: bool) -> PiModule {
        let a = FiniteAbelianGroup::cyclic(d);
        let pi = FiniteGroup::cyclic(n);
        if negate {
            let neg: Vec<usize> = (0..a.order()).map(|x| a.neg(x)).collect();
            let id: Vec<usize> = (0..a.order()).collect();
            PiModule::new(pi, a, vec![id, neg]).unwrap()
        } else {
            PiModule::trivial_action(pi, a)
        }
    }

    fn xi_ppp(n: usize, value: usize) -> Vec<usize> {
        let mut xi = vec![0; n * n * n];
        xi[(n + 1) * n + 1] = value;
        xi
    }

    #[test]
    fn strict_and_twisted_constraints() {
        assert!(build_gr_category(module(2, 2, false), vec![0; 8]).is_ok());
        assert!(build_gr_category(module(2, 2, false), xi_ppp(2, 1)).is_ok());
        assert_eq!(
            build_gr_category(module(2, 3, false), xi_ppp(2, 1)),
            Err(Error::NotACocycle(1, 1, 1, 1))
        );
        let mut xi = vec![0; 8];
        xi[1] = 1; // (0, 0, 1)
        assert_eq!(build_gr_category(module(2, 2, false), xi), Err(Error::NotNormalized(0, 0, 1)));
    }

    #[test]
    fn compose_and_tensor() {
        let c = GrCategory::strict(module(2, 3, true));
        let m = |object, comp| GrMorphism { object, comp };
        assert_eq!(c.compose(m(1, 0), m(1, 2)).unwrap(), m(1, 2));
        assert_eq!(c.compose(m(1, 1), m(1, 2)).unwrap(), m(1, 0));
        assert_eq!(c.compose(m(0, 1), m(1, 2)), Err(Error::ObjectMismatch(0, 1)));
        assert_eq!(c.tensor(m(0, 0), m(1, 2)), m(1, 2));
        assert_eq!(c.tensor(m(1, 0), m(1, 1)), m(0, 2));
        let t = GrCategory::strict(module(2, 3, false));
        assert_eq!(t.tensor(m(1, 1), m(1, 1)), m(0, 2));

        let a22 = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let c22 = GrCategory::strict(PiModule::trivial_action(FiniteGroup::trivial(), a22.clone()));
        let got = c22
            .compose(m(0, a22.index(&[1, 0])), m(0, a22.index(&[1, 1])))
            .unwrap();
        assert_eq!(got, m(0, a22.index(&[0, 1])));
    }

    #[test]
    fn hom_between_distinct_objects_is_empty() {
        let c = GrCategory::strict(module(2, 3, false));
        assert!(c.hom(0, 1).is_empty());
        assert_eq!(c.hom(1, 1).len(), 3);
    }

    #[test]
    fn composition_and_tensor_laws_exhaustive() {
        let c = GrCategory::strict(module(2, 3, true));
        let ms: Vec<GrMorphism> = (0..2).flat_map(|x| c.hom(x, x)).collect();
        for &a in &ms {
            assert_eq!(c.compose(a, c.identity(a.object)).unwrap(), a);
            for &b in ms.iter().filter(|b| b.object == a.object) {
                for &d in ms.iter().filter(|d| d.object == a.object) {
                    let l = c.compose(c.compose(a, b).unwrap(), d).unwrap();
                    let r = c.compose(a, c.compose(b, d).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        for &a in &ms {
            for &a2 in ms.iter().filter(|m| m.object == a.object) {
                for &b in &ms {
                    for &b2 in ms.iter().filter(|m| m.object == b.object) {
                        let l = c.tensor(c.compose(a, a2).unwrap(), c.compose(b, b2).unwrap());
                        let r = c.compose(c.tensor(a, b), c.tensor(a2, b2)).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_agrees_with_cocycle_identity() {
        let m = module(2, 3, false);
        for v in 0..3 {
            // bypass validation to look at invalid constraints too
            let c = GrCategory { module: m.clone(), xi: xi_ppp(2, v) };
            assert_eq!(c.pentagon_failure(), c.cocycle_identity_failure());
        }
        let m = module(3, 3, false);
        for v in 0..3 {
            let c = GrCategory { module: m.clone(), xi: xi_ppp(3, v) };
            assert_eq!(c.pentagon_failure(), c.cocycle_identity_failure());
        }
    }

    #[test]
    fn identity_functor_passes() {
        let c = build_gr_category(module(2, 2, false), xi_ppp(2, 1)).unwrap();
        let r = check_gr_functor(&c, &c, &GrFunctorData::identity(&c));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn no_functor_untwists_a_nontrivial_constraint() {
        let src = build_gr_category(module(2, 2, false), xi_ppp(2, 1)).unwrap();
        let dst = GrCategory::strict(module(2, 2, false));
        for bits in 0..16usize {
            let gtilde = (0..4).map(|i| (bits >> i) & 1).collect();
            let fd = GrFunctorData { gtilde, ..GrFunctorData::identity(&src) };
            let r = check_gr_functor(&src, &dst, &fd);
            assert!(!r.passes("hexagon"));
        }
    }

    #[test]
    fn bad_shape_is_a_failed_item() {
        let c = GrCategory::strict(module(2, 2, false));
        let fd = GrFunctorData { phi: vec![0], ..GrFunctorData::identity(&c) };
        let r = check_gr_functor(&c, &c, &fd);
        assert!(!r.passes("shape"));
    }
}
