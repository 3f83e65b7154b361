//! The truncated equivariant cochain complex
//! C¹ → C² → Z³ of a Γ-equivariant Π-module, as dense tables.
//!
//! Tables are indexed by element indices in row-major order:
//! `f[x]`, `pp[x*n + y]`, `pg[x*m + σ]`, `ppp[(x*n + y)*n + z]`,
//! `ppg[(x*n + y)*m + σ]`, `pgg[(x*m + σ)*m + τ]` with n = |Π|, m = |Γ|.
//! A cochain is normalized when it vanishes whenever any argument is the
//! identity of its group; normalized slots are stored as zero.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{EquivariantModule, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::report::{first_failure, tuples, Report};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain1 {
    pub n: usize,
    pub f: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain2 {
    pub n: usize,
    pub m: usize,
    pub pp: Vec<usize>,
    pub pg: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain3 {
    pub n: usize,
    pub m: usize,
    pub ppp: Vec<usize>,
    pub ppg: Vec<usize>,
    pub pgg: Vec<usize>,
}

impl Cochain1 {
    pub fn zero(em: &EquivariantModule) -> Self {
        let n = em.pi().order();
        Self { n, f: vec![0; n] }
    }

    pub fn is_normalized(&self) -> bool {
        self.f.first().map_or(true, |&v| v == 0)
    }
}

impl Cochain2 {
    pub fn zero(em: &EquivariantModule) -> Self {
        let (n, m) = dims(em);
        Self { n, m, pp: vec![0; n * n], pg: vec![0; n * m] }
    }

    #[inline]
    pub fn pp_at(&self, x: usize, y: usize) -> usize {
        self.pp[x * self.n + y]
    }

    #[inline]
    pub fn pg_at(&self, x: usize, s: usize) -> usize {
        self.pg[x * self.m + s]
    }

    /// First index tuple (tagged 0 for Π², 1 for Π×Γ) that should be zero
    /// but is not.
    pub fn normalization_failure(&self) -> Option<Vec<usize>> {
        let (n, m) = (self.n, self.m);
        tuples(&[n, n])
            .find(|p| (p[0] == 0 || p[1] == 0) && self.pp_at(p[0], p[1]) != 0)
            .map(|p| vec![0, p[0], p[1]])
            .or_else(|| {
                tuples(&[n, m])
                    .find(|p| (p[0] == 0 || p[1] == 0) && self.pg_at(p[0], p[1]) != 0)
                    .map(|p| vec![1, p[0], p[1]])
            })
    }
}

impl Cochain3 {
    pub fn zero(em: &EquivariantModule) -> Self {
        let (n, m) = dims(em);
        Self { n, m, ppp: vec![0; n * n * n], ppg: vec![0; n * n * m], pgg: vec![0; n * m * m] }
    }

    #[inline]
    pub fn ppp_at(&self, x: usize, y: usize, z: usize) -> usize {
        self.ppp[(x * self.n + y) * self.n + z]
    }

    #[inline]
    pub fn ppg_at(&self, x: usize, y: usize, s: usize) -> usize {
        self.ppg[(x * self.n + y) * self.m + s]
    }

    #[inline]
    pub fn pgg_at(&self, x: usize, s: usize, t: usize) -> usize {
        self.pgg[(x * self.m + s) * self.m + t]
    }

    /// First non-normalized slot, as (block, indices...) with block 0 for
    /// Π³, 1 for Π²×Γ and 2 for Π×Γ².
    pub fn normalization_failure(&self) -> Option<Vec<usize>> {
        let (n, m) = (self.n, self.m);
        let any_id = |p: &[usize]| p.iter().any(|&v| v == 0);
        tuples(&[n, n, n])
            .find(|p| any_id(p) && self.ppp_at(p[0], p[1], p[2]) != 0)
            .map(|p| vec![0, p[0], p[1], p[2]])
            .or_else(|| {
                tuples(&[n, n, m])
                    .find(|p| any_id(p) && self.ppg_at(p[0], p[1], p[2]) != 0)
                    .map(|p| vec![1, p[0], p[1], p[2]])
            })
            .or_else(|| {
                tuples(&[n, m, m])
                    .find(|p| any_id(p) && self.pgg_at(p[0], p[1], p[2]) != 0)
                    .map(|p| vec![2, p[0], p[1], p[2]])
            })
    }

    pub fn is_zero(&self) -> bool {
        self.ppp.iter().chain(&self.ppg).chain(&self.pgg).all(|&v| v == 0)
    }
}

pub(crate) fn dims(em: &EquivariantModule) -> (usize, usize) {
    (em.pi().order(), em.gamma.order())
}

/// Shape check against a module: table lengths and element ranges.
pub trait Shaped {
    fn fits(&self, em: &EquivariantModule) -> bool;
}

fn in_range(a: &FiniteAbelianGroup, t: &[usize], len: usize) -> bool {
    t.len() == len && t.iter().all(|&v| v < a.order())
}

impl Shaped for Cochain1 {
    fn fits(&self, em: &EquivariantModule) -> bool {
        let (n, _) = dims(em);
        self.n == n && in_range(em.a(), &self.f, n)
    }
}

impl Shaped for Cochain2 {
    fn fits(&self, em: &EquivariantModule) -> bool {
        let (n, m) = dims(em);
        self.n == n && self.m == m && in_range(em.a(), &self.pp, n * n) && in_range(em.a(), &self.pg, n * m)
    }
}

impl Shaped for Cochain3 {
    fn fits(&self, em: &EquivariantModule) -> bool {
        let (n, m) = dims(em);
        self.n == n
            && self.m == m
            && in_range(em.a(), &self.ppp, n * n * n)
            && in_range(em.a(), &self.ppg, n * n * m)
            && in_range(em.a(), &self.pgg, n * m * m)
    }
}

/// ∂: C¹ → C².
/// (∂f)(x, y) = x·f(y) − f(xy) + f(x) and (∂f)(x, σ) = σf(x) − f(σx).
pub fn d1(em: &EquivariantModule, f: &Cochain1) -> Cochain2 {
    let (n, m) = dims(em);
    let (g, a) = (em.pi(), em.a());
    let mut out = Cochain2::zero(em);
    for x in 0..n {
        for y in 0..n {
            let v = a.add(a.sub(em.act(x, f.f[y]), f.f[g.mul(x, y)]), f.f[x]);
            out.pp[x * n + y] = v;
        }
        for s in 0..m {
            out.pg[x * m + s] = a.sub(em.ga(s, f.f[x]), f.f[em.gp(s, x)]);
        }
    }
    out
}

/// ∂: C² → C³.
pub fn d2(em: &EquivariantModule, g: &Cochain2) -> Cochain3 {
    let (n, m) = dims(em);
    let (pi, gam, a) = (em.pi(), &em.gamma, em.a());
    let mut out = Cochain3::zero(em);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // x·g(y,z) − g(xy,z) + g(x,yz) − g(x,y)
                let mut v = em.act(x, g.pp_at(y, z));
                v = a.sub(v, g.pp_at(pi.mul(x, y), z));
                v = a.add(v, g.pp_at(x, pi.mul(y, z)));
                v = a.sub(v, g.pp_at(x, y));
                out.ppp[(x * n + y) * n + z] = v;
            }
            for s in 0..m {
                // σg(x,y) − g(σx,σy) − (σx)·g(y,σ) + g(xy,σ) − g(x,σ)
                let sx = em.gp(s, x);
                let mut v = em.ga(s, g.pp_at(x, y));
                v = a.sub(v, g.pp_at(sx, em.gp(s, y)));
                v = a.sub(v, em.act(sx, g.pg_at(y, s)));
                v = a.add(v, g.pg_at(pi.mul(x, y), s));
                v = a.sub(v, g.pg_at(x, s));
                out.ppg[(x * n + y) * m + s] = v;
            }
        }
        for s in 0..m {
            for t in 0..m {
                // σg(x,τ) − g(x,στ) + g(τx,σ)
                let mut v = em.ga(s, g.pg_at(x, t));
                v = a.sub(v, g.pg_at(x, gam.mul(s, t)));
                v = a.add(v, g.pg_at(em.gp(t, x), s));
                out.pgg[(x * m + s) * m + t] = v;
            }
        }
    }
    out
}

/// Names of the four cocycle conditions, in report order.
pub const CONDITIONS: [&str; 4] = ["pentagon", "hexagon_gamma", "theta_monoidal", "theta_cocycle"];

/// Defect of the Π⁴ condition at (x, y, z, t):
/// h(x,y,zt) + h(xy,z,t) − x·h(y,z,t) − h(x,yz,t) − h(x,y,z).
pub fn pi_cocycle_defect(em: &EquivariantModule, h: &Cochain3, w: &[usize]) -> usize {
    let (g, a) = (em.pi(), em.a());
    let (x, y, z, t) = (w[0], w[1], w[2], w[3]);
    let lhs = a.add(h.ppp_at(x, y, g.mul(z, t)), h.ppp_at(g.mul(x, y), z, t));
    let rhs = a.add(
        a.add(em.act(x, h.ppp_at(y, z, t)), h.ppp_at(x, g.mul(y, z), t)),
        h.ppp_at(x, y, z),
    );
    a.sub(lhs, rhs)
}

/// Defect of the Π³×Γ condition at (x, y, z, σ):
/// σh(x,y,z) + h(xy,z,σ) + h(x,y,σ) − h(σx,σy,σz) − (σx)·h(y,z,σ) − h(x,yz,σ).
pub fn gamma_hexagon_defect(em: &EquivariantModule, h: &Cochain3, w: &[usize]) -> usize {
    let (g, a) = (em.pi(), em.a());
    let (x, y, z, s) = (w[0], w[1], w[2], w[3]);
    let sx = em.gp(s, x);
    let lhs = a.add(
        a.add(em.ga(s, h.ppp_at(x, y, z)), h.ppg_at(g.mul(x, y), z, s)),
        h.ppg_at(x, y, s),
    );
    let rhs = a.add(
        a.add(h.ppp_at(sx, em.gp(s, y), em.gp(s, z)), em.act(sx, h.ppg_at(y, z, s))),
        h.ppg_at(x, g.mul(y, z), s),
    );
    a.sub(lhs, rhs)
}

/// Defect of the Π²×Γ² condition at (x, y, σ, τ):
/// σh(x,y,τ) + h(τx,τy,σ) + h(x,σ,τ) + (στx)·h(y,σ,τ) − h(x,y,στ) − h(xy,σ,τ).
pub fn gamma_monoidal_defect(em: &EquivariantModule, h: &Cochain3, w: &[usize]) -> usize {
    let (g, gam, a) = (em.pi(), &em.gamma, em.a());
    let (x, y, s, t) = (w[0], w[1], w[2], w[3]);
    let st = gam.mul(s, t);
    let mut lhs = a.add(em.ga(s, h.ppg_at(x, y, t)), h.ppg_at(em.gp(t, x), em.gp(t, y), s));
    lhs = a.add(lhs, h.pgg_at(x, s, t));
    lhs = a.add(lhs, em.act(em.gp(st, x), h.pgg_at(y, s, t)));
    let rhs = a.add(h.ppg_at(x, y, st), h.pgg_at(g.mul(x, y), s, t));
    a.sub(lhs, rhs)
}

/// Defect of the Π×Γ³ condition at (x, σ, τ, γ):
/// σh(x,τ,γ) + h(x,σ,τγ) − h(x,στ,γ) − h(γx,σ,τ).
pub fn gamma_cocycle_defect(em: &EquivariantModule, h: &Cochain3, w: &[usize]) -> usize {
    let (gam, a) = (&em.gamma, em.a());
    let (x, s, t, c) = (w[0], w[1], w[2], w[3]);
    let lhs = a.add(em.ga(s, h.pgg_at(x, t, c)), h.pgg_at(x, s, gam.mul(t, c)));
    let rhs = a.add(h.pgg_at(x, gam.mul(s, t), c), h.pgg_at(em.gp(c, x), s, t));
    a.sub(lhs, rhs)
}

/// `is_cocycle3`: normalization first, then every instance of the four
/// conditions over its full index range, first witness per condition.
/// Conditions are not evaluated on a non-normalized or misshapen cochain.
pub fn is_cocycle3(em: &EquivariantModule, h: &Cochain3) -> Report {
    let mut r = Report::new();
    if !h.fits(em) {
        r.push("shape", Some(Vec::new()));
        return r;
    }
    let norm = h.normalization_failure();
    let normalized = norm.is_none();
    r.push("normalized", norm);
    if !normalized {
        return r;
    }
    let (n, m) = dims(em);
    r.push(CONDITIONS[0], first_failure(tuples(&[n, n, n, n]), |w| pi_cocycle_defect(em, h, w) == 0));
    r.push(CONDITIONS[1], first_failure(tuples(&[n, n, n, m]), |w| gamma_hexagon_defect(em, h, w) == 0));
    r.push(CONDITIONS[2], first_failure(tuples(&[n, n, m, m]), |w| gamma_monoidal_defect(em, h, w) == 0));
    r.push(CONDITIONS[3], first_failure(tuples(&[n, m, m, m]), |w| gamma_cocycle_defect(em, h, w) == 0));
    r
}

/// The same two Γ-conditions phrased as the factor-set laws they come from:
/// the hexagon law solved for the Π³ terms, and the monoidal-naturality law
/// of θ solved for its Π-coboundary. Returns (hexagon form holds everywhere,
/// naturality form holds everywhere).
pub fn factor_set_phrasing_holds(em: &EquivariantModule, h: &Cochain3) -> (bool, bool) {
    let (n, m) = (h.n, h.m);
    let (g, gam, a) = (em.pi(), &em.gamma, em.a());
    let hex = tuples(&[n, n, n, m]).all(|w| {
        let (x, y, z, s) = (w[0], w[1], w[2], w[3]);
        let sx = em.gp(s, x);
        // −σx·h(y,z,σ) + h(xy,z,σ) + h(x,y,σ) − h(x,yz,σ) = h(σx,σy,σz) − σh(x,y,z)
        let mut lhs = a.neg(em.act(sx, h.ppg_at(y, z, s)));
        lhs = a.add(lhs, h.ppg_at(g.mul(x, y), z, s));
        lhs = a.add(lhs, h.ppg_at(x, y, s));
        lhs = a.sub(lhs, h.ppg_at(x, g.mul(y, z), s));
        let rhs = a.sub(h.ppp_at(sx, em.gp(s, y), em.gp(s, z)), em.ga(s, h.ppp_at(x, y, z)));
        lhs == rhs
    });
    let nat = tuples(&[n, n, m, m]).all(|w| {
        let (x, y, s, t) = (w[0], w[1], w[2], w[3]);
        let st = gam.mul(s, t);
        // (στ)x·h(y,σ,τ) − h(xy,σ,τ) + h(x,σ,τ) = h(x,y,στ) − h(τx,τy,σ) − σh(x,y,τ)
        let mut lhs = em.act(em.gp(st, x), h.pgg_at(y, s, t));
        lhs = a.sub(lhs, h.pgg_at(g.mul(x, y), s, t));
        lhs = a.add(lhs, h.pgg_at(x, s, t));
        let mut rhs = a.sub(h.ppg_at(x, y, st), h.ppg_at(em.gp(t, x), em.gp(t, y), s));
        rhs = a.sub(rhs, em.ga(s, h.ppg_at(x, y, t)));
        lhs == rhs
    });
    (hex, nat)
}

/// Pointwise `h1 + c·h2` for cochains of any degree.
pub trait Combine: Sized + Shaped {
    fn tables(&self) -> Vec<&[usize]>;
    fn from_tables(&self, tables: Vec<Vec<usize>>) -> Self;
}

impl Combine for Cochain1 {
    fn tables(&self) -> Vec<&[usize]> {
        vec![&self.f]
    }
    fn from_tables(&self, mut t: Vec<Vec<usize>>) -> Self {
        Self { n: self.n, f: t.remove(0) }
    }
}

impl Combine for Cochain2 {
    fn tables(&self) -> Vec<&[usize]> {
        vec![&self.pp, &self.pg]
    }
    fn from_tables(&self, mut t: Vec<Vec<usize>>) -> Self {
        let pg = t.pop().unwrap();
        let pp = t.pop().unwrap();
        Self { n: self.n, m: self.m, pp, pg }
    }
}

impl Combine for Cochain3 {
    fn tables(&self) -> Vec<&[usize]> {
        vec![&self.ppp, &self.ppg, &self.pgg]
    }
    fn from_tables(&self, mut t: Vec<Vec<usize>>) -> Self {
        let pgg = t.pop().unwrap();
        let ppg = t.pop().unwrap();
        let ppp = t.pop().unwrap();
        Self { n: self.n, m: self.m, ppp, ppg, pgg }
    }
}

/// `combine`: h1 + c·h2. Degree mismatch is a type error here; the
/// `AnyCochain` wrapper reports it at runtime.
pub fn combine<C: Combine>(em: &EquivariantModule, h1: &C, c: i64, h2: &C) -> Result<C> {
    if !h1.fits(em) || !h2.fits(em) {
        return Err(Error::ModuleMismatch);
    }
    let a = em.a();
    let tables = h1
        .tables()
        .iter()
        .zip(h2.tables())
        .map(|(t1, t2)| t1.iter().zip(t2).map(|(&u, &v)| a.add(u, a.scale(c, v))).collect())
        .collect();
    Ok(h1.from_tables(tables))
}

/// A cochain of any degree, for callers that only learn the degree at
/// runtime (documents on disk).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyCochain {
    One(Cochain1),
    Two(Cochain2),
    Three(Cochain3),
}

impl AnyCochain {
    pub fn combine(&self, em: &EquivariantModule, c: i64, other: &AnyCochain) -> Result<AnyCochain> {
        match (self, other) {
            (AnyCochain::One(a), AnyCochain::One(b)) => combine(em, a, c, b).map(AnyCochain::One),
            (AnyCochain::Two(a), AnyCochain::Two(b)) => combine(em, a, c, b).map(AnyCochain::Two),
            (AnyCochain::Three(a), AnyCochain::Three(b)) => combine(em, a, c, b).map(AnyCochain::Three),
            _ => Err(Error::DegreeMismatch),
        }
    }
}
