//! H³_Γ(Π, A) and coboundary solving.
//!
//! Normalized cochains are encoded by their free slots only (no argument is
//! an identity). Slot order: Π³ then Π²×Γ then Π×Γ² for degree 3, Π² then
//! Π×Γ for degree 2, each block lexicographic. A coordinate vector lists,
//! for each slot, the coordinates of its A-value in the invariant-factor
//! decomposition, so coordinate `slot*k + i` lives in ℤ/dᵢ.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{EquivariantModule, FiniteAbelianGroup};
use crate::cochain::{self, Cochain1, Cochain2, Cochain3, Shaped};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_factors, Echelon, IntMatrix};
use crate::report::tuples;

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Snf,
    Enum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H3Result {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    /// One cocycle per class, each the lexicographically least member of
    /// its class, sorted. Absent when the class count exceeds the cap.
    pub representatives: Option<Vec<Cochain3>>,
}

/// Free-slot layout for |Π| = n, |Γ| = m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
}

impl Layout {
    pub fn of(em: &EquivariantModule) -> Self {
        Self { n: em.pi().order(), m: em.gamma.order() }
    }

    fn p(&self) -> usize {
        self.n - 1
    }

    fn g(&self) -> usize {
        self.m - 1
    }

    pub fn c1(&self) -> usize {
        self.p()
    }

    pub fn c2_pp(&self) -> usize {
        self.p() * self.p()
    }

    pub fn c2(&self) -> usize {
        self.c2_pp() + self.p() * self.g()
    }

    pub fn c3_ppp(&self) -> usize {
        self.p().pow(3)
    }

    fn c3_ppg(&self) -> usize {
        self.p() * self.p() * self.g()
    }

    pub fn c3(&self) -> usize {
        self.c3_ppp() + self.c3_ppg() + self.p() * self.g() * self.g()
    }

    pub fn f(&self, x: usize) -> Option<usize> {
        (x != 0).then(|| x - 1)
    }

    pub fn pp(&self, x: usize, y: usize) -> Option<usize> {
        (x != 0 && y != 0).then(|| (x - 1) * self.p() + (y - 1))
    }

    pub fn pg(&self, x: usize, s: usize) -> Option<usize> {
        (x != 0 && s != 0).then(|| self.c2_pp() + (x - 1) * self.g() + (s - 1))
    }

    pub fn ppp(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        (x != 0 && y != 0 && z != 0).then(|| ((x - 1) * self.p() + (y - 1)) * self.p() + (z - 1))
    }

    pub fn ppg(&self, x: usize, y: usize, s: usize) -> Option<usize> {
        (x != 0 && y != 0 && s != 0)
            .then(|| self.c3_ppp() + ((x - 1) * self.p() + (y - 1)) * self.g() + (s - 1))
    }

    pub fn pgg(&self, x: usize, s: usize, t: usize) -> Option<usize> {
        (x != 0 && s != 0 && t != 0).then(|| {
            self.c3_ppp() + self.c3_ppg() + ((x - 1) * self.g() + (s - 1)) * self.g() + (t - 1)
        })
    }

    pub fn c1_slots(&self, f: &Cochain1) -> Vec<usize> {
        f.f[1..].to_vec()
    }

    pub fn c1_from_slots(&self, v: &[usize]) -> Cochain1 {
        let mut f = vec![0; self.n];
        f[1..].copy_from_slice(v);
        Cochain1 { n: self.n, f }
    }

    pub fn c2_slots(&self, g: &Cochain2) -> Vec<usize> {
        let mut out = vec![0; self.c2()];
        for x in 1..self.n {
            for y in 1..self.n {
                out[self.pp(x, y).unwrap()] = g.pp_at(x, y);
            }
            for s in 1..self.m {
                out[self.pg(x, s).unwrap()] = g.pg_at(x, s);
            }
        }
        out
    }

    pub fn c2_from_slots(&self, v: &[usize]) -> Cochain2 {
        let (n, m) = (self.n, self.m);
        let mut g = Cochain2 { n, m, pp: vec![0; n * n], pg: vec![0; n * m] };
        for x in 1..n {
            for y in 1..n {
                g.pp[x * n + y] = v[self.pp(x, y).unwrap()];
            }
            for s in 1..m {
                g.pg[x * m + s] = v[self.pg(x, s).unwrap()];
            }
        }
        g
    }

    pub fn c3_slots(&self, h: &Cochain3) -> Vec<usize> {
        let mut out = vec![0; self.c3()];
        for x in 1..self.n {
            for y in 1..self.n {
                for z in 1..self.n {
                    out[self.ppp(x, y, z).unwrap()] = h.ppp_at(x, y, z);
                }
                for s in 1..self.m {
                    out[self.ppg(x, y, s).unwrap()] = h.ppg_at(x, y, s);
                }
            }
            for s in 1..self.m {
                for t in 1..self.m {
                    out[self.pgg(x, s, t).unwrap()] = h.pgg_at(x, s, t);
                }
            }
        }
        out
    }

    pub fn c3_from_slots(&self, v: &[usize]) -> Cochain3 {
        let (n, m) = (self.n, self.m);
        let mut h = Cochain3 { n, m, ppp: vec![0; n * n * n], ppg: vec![0; n * n * m], pgg: vec![0; n * m * m] };
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    h.ppp[(x * n + y) * n + z] = v[self.ppp(x, y, z).unwrap()];
                }
                for s in 1..m {
                    h.ppg[(x * n + y) * m + s] = v[self.ppg(x, y, s).unwrap()];
                }
            }
            for s in 1..m {
                for t in 1..m {
                    h.pgg[(x * m + s) * m + t] = v[self.pgg(x, s, t).unwrap()];
                }
            }
        }
        h
    }
}

/// How a term's slot value is transformed before it is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Act {
    Id,
    Pi(usize),
    Gamma(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub act: Act,
    pub slot: usize,
}

/// An A-valued linear expression in slot values: Σ coeff·act(value[slot]).
pub type Form = Vec<Term>;

#[derive(Default)]
struct FormBuilder(Form);

impl FormBuilder {
    fn add(&mut self, coeff: i64, act: Act, slot: Option<usize>) -> &mut Self {
        if let Some(slot) = slot {
            self.0.push(Term { coeff, act, slot });
        }
        self
    }

    fn take(&mut self) -> Form {
        core::mem::take(&mut self.0)
    }
}

pub fn eval_form(em: &EquivariantModule, form: &[Term], values: &[usize]) -> usize {
    let a = em.a();
    form.iter().fold(0, |acc, t| {
        let v = values[t.slot];
        let v = match t.act {
            Act::Id => v,
            Act::Pi(x) => em.act(x, v),
            Act::Gamma(s) => em.ga(s, v),
        };
        a.add(acc, a.scale(t.coeff, v))
    })
}

/// ∂ on C¹, one form per free C² slot.
pub fn d1_forms(em: &EquivariantModule) -> Vec<Form> {
    let l = Layout::of(em);
    let pi = em.pi();
    let mut out = Vec::with_capacity(l.c2());
    let mut b = FormBuilder::default();
    for x in 1..l.n {
        for y in 1..l.n {
            b.add(1, Act::Pi(x), l.f(y)).add(-1, Act::Id, l.f(pi.mul(x, y))).add(1, Act::Id, l.f(x));
            out.push(b.take());
        }
    }
    for x in 1..l.n {
        for s in 1..l.m {
            b.add(1, Act::Gamma(s), l.f(x)).add(-1, Act::Id, l.f(em.gp(s, x)));
            out.push(b.take());
        }
    }
    out
}

/// ∂ on C², one form per free C³ slot.
pub fn d2_forms(em: &EquivariantModule) -> Vec<Form> {
    let l = Layout::of(em);
    let (pi, gam) = (em.pi(), &em.gamma);
    let mut out = vec![Form::new(); l.c3()];
    let mut b = FormBuilder::default();
    for x in 1..l.n {
        for y in 1..l.n {
            for z in 1..l.n {
                b.add(1, Act::Pi(x), l.pp(y, z))
                    .add(-1, Act::Id, l.pp(pi.mul(x, y), z))
                    .add(1, Act::Id, l.pp(x, pi.mul(y, z)))
                    .add(-1, Act::Id, l.pp(x, y));
                out[l.ppp(x, y, z).unwrap()] = b.take();
            }
            for s in 1..l.m {
                let sx = em.gp(s, x);
                b.add(1, Act::Gamma(s), l.pp(x, y))
                    .add(-1, Act::Id, l.pp(sx, em.gp(s, y)))
                    .add(-1, Act::Pi(sx), l.pg(y, s))
                    .add(1, Act::Id, l.pg(pi.mul(x, y), s))
                    .add(-1, Act::Id, l.pg(x, s));
                out[l.ppg(x, y, s).unwrap()] = b.take();
            }
        }
        for s in 1..l.m {
            for t in 1..l.m {
                b.add(1, Act::Gamma(s), l.pg(x, t))
                    .add(-1, Act::Id, l.pg(x, gam.mul(s, t)))
                    .add(1, Act::Id, l.pg(em.gp(t, x), s));
                out[l.pgg(x, s, t).unwrap()] = b.take();
            }
        }
    }
    out
}

/// One instance of a cocycle condition: `form` must vanish.
#[derive(Debug, Clone)]
pub struct Condition {
    /// Index into `cochain::CONDITIONS`.
    pub kind: usize,
    pub at: [usize; 4],
    pub form: Form,
}

/// All instances of the four cocycle conditions over C³ slots, in the
/// order `is_cocycle3` scans them.
pub fn condition_forms(em: &EquivariantModule) -> Vec<Condition> {
    let l = Layout::of(em);
    let (n, m) = (l.n, l.m);
    let (pi, gam) = (em.pi(), &em.gamma);
    let mut out = Vec::new();
    let mut b = FormBuilder::default();
    for w in tuples(&[n, n, n, n]) {
        let (x, y, z, t) = (w[0], w[1], w[2], w[3]);
        b.add(1, Act::Id, l.ppp(x, y, pi.mul(z, t)))
            .add(1, Act::Id, l.ppp(pi.mul(x, y), z, t))
            .add(-1, Act::Pi(x), l.ppp(y, z, t))
            .add(-1, Act::Id, l.ppp(x, pi.mul(y, z), t))
            .add(-1, Act::Id, l.ppp(x, y, z));
        out.push(Condition { kind: 0, at: [x, y, z, t], form: b.take() });
    }
    for w in tuples(&[n, n, n, m]) {
        let (x, y, z, s) = (w[0], w[1], w[2], w[3]);
        let sx = em.gp(s, x);
        b.add(1, Act::Gamma(s), l.ppp(x, y, z))
            .add(1, Act::Id, l.ppg(pi.mul(x, y), z, s))
            .add(1, Act::Id, l.ppg(x, y, s))
            .add(-1, Act::Id, l.ppp(sx, em.gp(s, y), em.gp(s, z)))
            .add(-1, Act::Pi(sx), l.ppg(y, z, s))
            .add(-1, Act::Id, l.ppg(x, pi.mul(y, z), s));
        out.push(Condition { kind: 1, at: [x, y, z, s], form: b.take() });
    }
    for w in tuples(&[n, n, m, m]) {
        let (x, y, s, t) = (w[0], w[1], w[2], w[3]);
        let st = gam.mul(s, t);
        b.add(1, Act::Gamma(s), l.ppg(x, y, t))
            .add(1, Act::Id, l.ppg(em.gp(t, x), em.gp(t, y), s))
            .add(1, Act::Id, l.pgg(x, s, t))
            .add(1, Act::Pi(em.gp(st, x)), l.pgg(y, s, t))
            .add(-1, Act::Id, l.ppg(x, y, st))
            .add(-1, Act::Id, l.pgg(pi.mul(x, y), s, t));
        out.push(Condition { kind: 2, at: [x, y, s, t], form: b.take() });
    }
    for w in tuples(&[n, m, m, m]) {
        let (x, s, t, c) = (w[0], w[1], w[2], w[3]);
        b.add(1, Act::Gamma(s), l.pgg(x, t, c))
            .add(1, Act::Id, l.pgg(x, s, gam.mul(t, c)))
            .add(-1, Act::Id, l.pgg(x, gam.mul(s, t), c))
            .add(-1, Act::Id, l.pgg(em.gp(c, x), s, t));
        out.push(Condition { kind: 3, at: [x, s, t, c], form: b.take() });
    }
    out
}

fn moduli(a: &FiniteAbelianGroup, slots: usize) -> Vec<u64> {
    a.factors().repeat(slots)
}

pub fn to_coords(a: &FiniteAbelianGroup, values: &[usize]) -> Vec<i64> {
    values.iter().flat_map(|&v| a.coords(v)).map(|c| c as i64).collect()
}

pub fn from_coords(a: &FiniteAbelianGroup, coords: &[i64]) -> Vec<usize> {
    if a.rank() == 0 {
        return Vec::new();
    }
    coords.chunks(a.rank()).map(|c| a.index_signed(c)).collect()
}

/// Integer matrix of a family of forms on `in_slots` input slots, with the
/// moduli of its output coordinates.
pub fn forms_matrix<'a>(
    em: &EquivariantModule,
    forms: impl ExactSizeIterator<Item = &'a Form>,
    in_slots: usize,
) -> (IntMatrix, Vec<u64>) {
    let a = em.a();
    let k = a.rank();
    let rows = forms.len();
    let id: Vec<i64> = (0..k * k).map(|i| (i / k == i % k) as i64).collect();
    let pi_m: Vec<Vec<i64>> = em.pi().elements().map(|x| a.automorphism_matrix(em.base.pi_on_a.map(x))).collect();
    let ga_m: Vec<Vec<i64>> = em.gamma.elements().map(|s| a.automorphism_matrix(em.gamma_on_a.map(s))).collect();
    let mut mat = IntMatrix::zero(rows * k, in_slots * k);
    for (r, form) in forms.enumerate() {
        for t in form {
            let mm = match t.act {
                Act::Id => &id,
                Act::Pi(x) => &pi_m[x],
                Act::Gamma(s) => &ga_m[s],
            };
            for i in 0..k {
                for j in 0..k {
                    let (ri, cj) = (r * k + i, t.slot * k + j);
                    mat.set(ri, cj, mat.get(ri, cj) + t.coeff * mm[i * k + j]);
                }
            }
        }
    }
    (mat, moduli(a, rows))
}

/// Matrix of ∂ in degree 1 or 2 on free-slot coordinates, with the moduli
/// of the codomain coordinates.
pub fn coboundary_matrix(em: &EquivariantModule, degree: usize) -> Result<(IntMatrix, Vec<u64>)> {
    let l = Layout::of(em);
    match degree {
        1 => Ok(forms_matrix(em, d1_forms(em).iter(), l.c1())),
        2 => Ok(forms_matrix(em, d2_forms(em).iter(), l.c2())),
        _ => Err(Error::Shape("coboundary degree must be 1 or 2".into())),
    }
}

fn column(m: &IntMatrix, j: usize) -> Vec<i64> {
    (0..m.rows()).map(|i| m.get(i, j)).collect()
}

fn unit(len: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[j] = 1;
    v
}

fn check_target(em: &EquivariantModule, h: &Cochain3) -> Result<()> {
    if !h.fits(em) {
        return Err(Error::ModuleMismatch);
    }
    match h.normalization_failure() {
        Some(w) => Err(Error::CochainNotNormalized(w)),
        None => Ok(()),
    }
}

/// Generators of Z³ in C³ coordinates (echelon form) and |Z³|.
pub fn cocycle_generators(em: &EquivariantModule) -> (Vec<Vec<i64>>, u128) {
    let l = Layout::of(em);
    let a = em.a();
    let conds = condition_forms(em);
    let forms: Vec<&Form> = conds.iter().map(|c| &c.form).collect();
    let (cm, e_mod) = forms_matrix(em, forms.into_iter(), l.c3());
    let d3 = moduli(a, l.c3());
    let off = e_mod.len();
    let all = [e_mod, d3.clone()].concat();
    let graph = Echelon::new(&all, (0..d3.len()).map(|j| [column(&cm, j), unit(d3.len(), j)].concat()));
    let z = graph.generators_in(off..all.len()).map(|v| v[off..].to_vec()).collect();
    (z, graph.order_in(off..all.len()))
}

/// B³ = ∂C² as an echelon over C³ coordinates.
pub fn coboundary_echelon(em: &EquivariantModule) -> Echelon {
    let l = Layout::of(em);
    let (dm, d3) = coboundary_matrix(em, 2).expect("degree 2");
    Echelon::new(&d3, (0..l.c2() * em.a().rank()).map(|j| column(&dm, j)))
}

pub fn compute_h3(em: &EquivariantModule, method: Method, cap: u64) -> Result<H3Result> {
    match method {
        Method::Snf => h3_snf(em, cap),
        Method::Enum => h3_enum(em, cap),
    }
}

fn h3_snf(em: &EquivariantModule, cap: u64) -> Result<H3Result> {
    let l = Layout::of(em);
    let a = em.a();
    let d3 = moduli(a, l.c3());
    let (z, z_order) = cocycle_generators(em);
    let b = coboundary_echelon(em);
    let e = a.exponent();
    let r = z.len();

    // relations among the z_i modulo B, read off the (ℤ/e)^r tail
    let tail = d3.len();
    let rel_mod = [d3.clone(), vec![e; r]].concat();
    let gens = z
        .iter()
        .enumerate()
        .map(|(i, zi)| [zi.clone(), unit(r, i)].concat())
        .chain(b.generators().map(|bj| [bj.clone(), vec![0; r]].concat()));
    let rel = Echelon::new(&rel_mod, gens.collect::<Vec<_>>());
    let mut rows: Vec<Vec<i64>> = rel.generators_in(tail..tail + r).map(|v| v[tail..].to_vec()).collect();
    rows.extend((0..r).map(|i| {
        let mut v = vec![0; r];
        v[i] = e as i64;
        v
    }));
    let (factors, free) = if r == 0 {
        (Vec::new(), 0)
    } else {
        cokernel_factors(&IntMatrix::from_rows(&rows)?)?
    };
    debug_assert_eq!(free, 0);
    let order = factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)).ok_or(Error::Overflow)?;
    debug_assert_eq!(order as u128 * b.order(), z_order);

    let representatives = (order <= cap).then(|| {
        let mut seen = BTreeSet::new();
        let zero = vec![0i64; tail];
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(v) = frontier.pop() {
            for zi in &z {
                let w: Vec<i64> = v.iter().zip(zi).map(|(x, y)| x + y).collect();
                let w = b.canonical(&w);
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.into_iter().map(|v| l.c3_from_slots(&from_coords(a, &v))).collect::<Vec<_>>()
    });
    Ok(H3Result { order, invariant_factors: factors, representatives })
}

fn slots_add(a: &FiniteAbelianGroup, u: &[usize], v: &[usize]) -> Vec<usize> {
    u.iter().zip(v).map(|(&x, &y)| a.add(x, y)).collect()
}

fn h3_enum(em: &EquivariantModule, cap: u64) -> Result<H3Result> {
    let l = Layout::of(em);
    let a = em.a();
    let z = enumerate_cocycle_slots(em, None, cap)?;
    let b = coboundary_set(em, cap)?;

    let mut assigned = BTreeSet::new();
    let mut reps = Vec::new();
    for h in &z {
        if assigned.contains(h) {
            continue;
        }
        for beta in &b {
            assigned.insert(slots_add(a, h, beta));
        }
        reps.push(h.clone());
    }
    debug_assert_eq!(reps.len() * b.len(), z.len());
    let order = reps.len() as u64;
    let in_b = |h: &Vec<usize>, c: u64| b.contains(&h.iter().map(|&v| a.scale(c as i64, v)).collect::<Vec<_>>());
    let factors = factors_from_torsion_counts(order, |c| reps.iter().filter(|h| in_b(h, c)).count() as u64);
    Ok(H3Result {
        order,
        invariant_factors: factors,
        representatives: Some(reps.iter().map(|v| l.c3_from_slots(v)).collect()),
    })
}

fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of a finite abelian group of the given order from
/// `killed(c)` = number of elements x with c·x = 0.
pub fn factors_from_torsion_counts(order: u64, killed: impl Fn(u64) -> u64) -> Vec<u64> {
    // for each prime, at_least[j] = number of cyclic p-factors of exponent > j
    let mut parts: Vec<(u64, Vec<usize>)> = Vec::new();
    for p in primes_of(order) {
        let mut at_least = Vec::new();
        let (mut prev, mut pj) = (1u64, p);
        loop {
            let cur = killed(pj);
            if cur == prev {
                break;
            }
            let mut ratio = cur / prev;
            let mut c = 0;
            while ratio > 1 {
                ratio /= p;
                c += 1;
            }
            at_least.push(c);
            prev = cur;
            pj *= p;
        }
        parts.push((p, at_least));
    }
    let count = parts.iter().map(|(_, v)| v.first().copied().unwrap_or(0)).max().unwrap_or(0);
    // the i-th largest factor takes p^(#j with at_least[j] > i)
    let mut out: Vec<u64> = (0..count)
        .map(|i| parts.iter().map(|(p, v)| p.pow(v.iter().filter(|&&c| c > i).count() as u32)).product())
        .collect();
    out.reverse();
    out
}

/// All of Z³ (optionally with a fixed Π³ part, given as a dense table) as
/// free-slot value vectors in lexicographic order, by backtracking with each
/// condition checked as soon as its last slot is assigned.
pub fn enumerate_cocycle_slots(em: &EquivariantModule, fixed_xi: Option<&[usize]>, cap: u64) -> Result<Vec<Vec<usize>>> {
    let l = Layout::of(em);
    let a = em.a();
    let mut domains: Vec<Vec<usize>> = vec![(0..a.order()).collect(); l.c3()];
    if let Some(xi) = fixed_xi {
        let n = l.n;
        if xi.len() != n * n * n || xi.iter().any(|&v| v >= a.order()) {
            return Err(Error::Shape("fixed Π³ table has the wrong size".into()));
        }
        for w in tuples(&[n, n, n]) {
            let v = xi[(w[0] * n + w[1]) * n + w[2]];
            match l.ppp(w[0], w[1], w[2]) {
                Some(slot) => domains[slot] = vec![v],
                None if v != 0 => return Ok(Vec::new()),
                None => {}
            }
        }
    }
    let mut by_last: Vec<Vec<Form>> = vec![Vec::new(); l.c3()];
    for c in condition_forms(em) {
        if let Some(last) = c.form.iter().map(|t| t.slot).max() {
            by_last[last].push(c.form);
        }
    }
    let mut search = Search { em, domains, by_last, values: vec![0; l.c3()], out: Vec::new(), nodes: 0, cap };
    search.run(0)?;
    Ok(search.out)
}

struct Search<'a> {
    em: &'a EquivariantModule,
    domains: Vec<Vec<usize>>,
    by_last: Vec<Vec<Form>>,
    values: Vec<usize>,
    out: Vec<Vec<usize>>,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn run(&mut self, slot: usize) -> Result<()> {
        if slot == self.values.len() {
            if self.out.len() as u64 >= self.cap {
                return Err(Error::CapExceeded(self.cap));
            }
            self.out.push(self.values.clone());
            return Ok(());
        }
        for i in 0..self.domains[slot].len() {
            self.nodes += 1;
            if self.nodes > self.cap.saturating_mul(16) {
                return Err(Error::CapExceeded(self.cap));
            }
            self.values[slot] = self.domains[slot][i];
            if self.by_last[slot].iter().all(|f| eval_form(self.em, f, &self.values) == 0) {
                self.run(slot + 1)?;
            }
        }
        Ok(())
    }
}

/// Every element of ∂C² as free-slot vectors, by running ∂ over all of C².
pub fn coboundary_set(em: &EquivariantModule, cap: u64) -> Result<BTreeSet<Vec<usize>>> {
    let l = Layout::of(em);
    let size = (em.a().order() as u128).pow(l.c2() as u32);
    if size > cap as u128 {
        return Err(Error::CapExceeded(cap));
    }
    let dims = vec![em.a().order(); l.c2()];
    Ok(tuples(&dims).map(|g| l.c3_slots(&cochain::d2(em, &l.c2_from_slots(&g)))).collect())
}

/// Linear solver for ∂g = h with g in C², or in the Π×Γ part of C² only.
#[derive(Debug, Clone)]
pub struct CoboundarySolver {
    layout: Layout,
    k: usize,
    echelon: Echelon,
}

impl CoboundarySolver {
    pub fn new(em: &EquivariantModule, gamma_part_only: bool) -> Self {
        let layout = Layout::of(em);
        let a = em.a();
        let k = a.rank();
        let (dm, d3) = coboundary_matrix(em, 2).expect("degree 2");
        let d2 = moduli(a, layout.c2());
        let first = if gamma_part_only { layout.c2_pp() * k } else { 0 };
        let gens: Vec<Vec<i64>> = (first..d2.len()).map(|j| [column(&dm, j), unit(d2.len(), j)].concat()).collect();
        let echelon = Echelon::new(&[d3, d2].concat(), gens);
        Self { layout, k, echelon }
    }

    pub fn solve(&self, em: &EquivariantModule, target: &Cochain3) -> Result<Option<Cochain2>> {
        check_target(em, target)?;
        let a = em.a();
        let t3 = self.layout.c3() * self.k;
        let mut v = to_coords(a, &self.layout.c3_slots(target));
        v.resize(self.echelon.len(), 0);
        let r = self.echelon.canonical(&v);
        if r[..t3].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let g: Vec<i64> = r[t3..].iter().map(|&x| -x).collect();
        let g = self.layout.c2_from_slots(&from_coords(a, &g));
        debug_assert_eq!(&cochain::d2(em, &g), target);
        Ok(Some(g))
    }

    pub fn contains(&self, em: &EquivariantModule, target: &Cochain3) -> Result<bool> {
        Ok(self.solve(em, target)?.is_some())
    }
}

/// g with ∂g = target, or `None` when target is not a coboundary.
pub fn solve_coboundary(em: &EquivariantModule, target: &Cochain3) -> Result<Option<Cochain2>> {
    CoboundarySolver::new(em, false).solve(em, target)
}

/// As `solve_coboundary`, with g required to vanish on Π².
pub fn solve_coboundary_gamma_part(em: &EquivariantModule, target: &Cochain3) -> Result<Option<Cochain2>> {
    CoboundarySolver::new(em, true).solve(em, target)
}

/// Brute-force counterpart of `solve_coboundary`: the lexicographically
/// first g in C² with ∂g = target.
pub fn solve_coboundary_enum(em: &EquivariantModule, target: &Cochain3, cap: u64) -> Result<Option<Cochain2>> {
    check_target(em, target)?;
    let l = Layout::of(em);
    if (em.a().order() as u128).pow(l.c2() as u32) > cap as u128 {
        return Err(Error::CapExceeded(cap));
    }
    let dims = vec![em.a().order(); l.c2()];
    let found = tuples(&dims).map(|g| l.c2_from_slots(&g)).find(|g| &cochain::d2(em, g) == target);
    Ok(found)
}
