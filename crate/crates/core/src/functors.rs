//! The powerset functor `F`, its quasi-inverse `G`, unit fields, and the
//! search for strong morphisms extending a weak one.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::carrier::{powerset_cap, ElementIndex, SubsetMask};
use crate::error::{Error, Result};
use crate::fuzzy::{
    check_strong_morphism, check_weak_morphism, is_field_like, ClosureCertificate, FiniteFuzzyRing,
    FuzzyRing, MorphismKind, MorphismTable,
};
use crate::hyper::{check_hom, FiniteHyperring};
use crate::report::AxiomReport;

/// Above this source size the powerset tables are computed on demand.
const MATERIALIZE_MAX: usize = 8;

/// `F(R)`: nonempty subsets of `R` with the extended sum, the elementwise
/// product, `K0` the subsets containing `0` and `epsilon = {-1}`.
///
/// The subset with mask `m` sits at index `m - 1`, so `{0}` is 0 and `{1}`
/// is 1. For a partial `R` the empty set (a possible sum) is appended last.
#[derive(Debug, Clone)]
pub struct PowersetFuzzyRing {
    base: FiniteHyperring,
    count: usize,
    epsilon: usize,
    tables: Option<(Vec<u16>, Vec<u16>)>,
}

impl PowersetFuzzyRing {
    pub fn base(&self) -> &FiniteHyperring {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.count
    }

    /// Index of the empty set, present only over a partial base.
    pub fn empty_index(&self) -> Option<usize> {
        self.base.is_partial().then(|| self.count - 1)
    }

    #[inline]
    pub fn mask(&self, i: usize) -> SubsetMask {
        if Some(i) == self.empty_index() {
            SubsetMask::EMPTY
        } else {
            SubsetMask(i as u64 + 1)
        }
    }

    /// # Panics
    /// On the empty mask over a non-partial base, which is not an element.
    #[inline]
    pub fn index(&self, m: SubsetMask) -> usize {
        if m.is_empty() {
            self.empty_index().expect("empty set is not an element of F(R) for total R")
        } else {
            m.bits() as usize - 1
        }
    }

    /// The singleton `{a}`.
    #[inline]
    pub fn embed(&self, a: ElementIndex) -> usize {
        self.index(SubsetMask::singleton(a))
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        self.index(self.base.extend(self.mask(a), self.mask(b)))
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        self.index(self.base.mul_masks(self.mask(a), self.mask(b)))
    }

    /// Tabulated copy, labelled by subsets.
    pub fn to_finite(&self) -> FiniteFuzzyRing {
        let labels = (0..self.count).map(|i| self.label(i)).collect();
        FiniteFuzzyRing::tabulate(self)
            .expect("powerset domain is closed")
            .with_labels(labels)
    }
}

impl FuzzyRing for PowersetFuzzyRing {
    type Elem = usize;

    fn elements(&self) -> Vec<usize> {
        (0..self.count).collect()
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.embed(self.base.one())
    }
    fn epsilon(&self) -> usize {
        self.epsilon
    }
    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some((add, _)) => add[a * self.count + b] as usize,
            None => self.add_raw(a, b),
        }
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some((_, mul)) => mul[a * self.count + b] as usize,
            None => self.mul_raw(a, b),
        }
    }
    #[inline]
    fn is_null(&self, a: usize) -> bool {
        self.mask(a).contains(0)
    }
    /// Singletons of units of the base.
    fn units(&self) -> Vec<usize> {
        let mut u: Vec<_> = self.base.units().iter().map(|a| self.embed(a)).collect();
        u.sort_unstable();
        u
    }
    fn label(&self, a: usize) -> String {
        let m = self.mask(a);
        match m.single() {
            Some(x) => self.base.label(x).to_string(),
            None => {
                let parts: Vec<_> = m.iter().map(|x| self.base.label(x)).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

/// `F(R)`. Errors when `|R|` exceeds the powerset cap.
pub fn f_obj(r: &FiniteHyperring) -> Result<PowersetFuzzyRing> {
    let cap = powerset_cap();
    if r.size() > cap {
        return Err(Error::PowersetCapExceeded { size: r.size(), cap });
    }
    let count = (1usize << r.size()) - 1 + usize::from(r.is_partial());
    let mut k = PowersetFuzzyRing { base: r.clone(), count, epsilon: 0, tables: None };
    k.epsilon = k.embed(r.neg(r.one()));
    if r.size() <= MATERIALIZE_MAX {
        use rayon::prelude::*;
        let rows: Vec<(Vec<u16>, Vec<u16>)> = (0..count)
            .into_par_iter()
            .map(|a| {
                (0..count)
                    .map(|b| (k.add_raw(a, b) as u16, k.mul_raw(a, b) as u16))
                    .unzip()
            })
            .collect();
        let (mut add, mut mul) = (Vec::with_capacity(count * count), Vec::with_capacity(count * count));
        for (ra, rm) in rows {
            add.extend(ra);
            mul.extend(rm);
        }
        k.tables = Some((add, mul));
    }
    Ok(k)
}

/// `F(f)`: `A ↦ f(A)` as a total index map `F(R) -> F(S)`.
pub fn f_mor(fr: &PowersetFuzzyRing, fs: &PowersetFuzzyRing, f: &[ElementIndex]) -> MorphismTable {
    let map = (0..fr.size())
        .map(|i| {
            let img = fr.mask(i).map(|x| f[x]);
            if img.is_empty() {
                fs.empty_index().unwrap_or(0)
            } else {
                fs.index(img)
            }
        })
        .collect();
    MorphismTable::total(MorphismKind::Strong, map)
}

/// `G(K)`: the hyperring on units ∪ {0} with
/// `a ⊕ b = {c : a + b + epsilon*c null}`. Partial iff `K` is not field-like.
#[derive(Debug, Clone)]
pub struct GConstruction<E> {
    pub hyper: FiniteHyperring,
    /// `carrier[j]` is the element of `K` at index `j` of `G(K)`.
    pub carrier: Vec<E>,
}

pub fn g_obj<K: FuzzyRing>(k: &K) -> Result<GConstruction<K::Elem>> {
    let mut carrier = vec![k.zero(), k.one()];
    carrier.extend(k.units().into_iter().filter(|&u| u != k.one()));
    let n = carrier.len();
    if n > crate::carrier::MAX_CARRIER {
        return Err(Error::CarrierTooLarge { size: n, cap: crate::carrier::MAX_CARRIER });
    }
    let pos: HashMap<_, _> = carrier.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let eps = k.epsilon();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &a in &carrier {
        for &b in &carrier {
            let ab = k.add(a, b);
            add.push(
                (0..n)
                    .filter(|&j| k.is_null(k.add(ab, k.mul(eps, carrier[j]))))
                    .collect::<SubsetMask>(),
            );
            let p = k.mul(a, b);
            mul.push(*pos.get(&p).ok_or_else(|| {
                Error::InvalidArgument(format!("product {p:?} of units is not a unit"))
            })?);
        }
    }
    let partial = !is_field_like(k).passed();
    let labels = carrier.iter().map(|&e| k.label(e)).collect();
    let hyper = FiniteHyperring::from_masks(n, add, mul, partial)?.with_labels(labels);
    Ok(GConstruction { hyper, carrier })
}

/// `G(f)` for a weak morphism given on positions of `k.elements()`, as an
/// index map between the `G` carriers.
pub fn g_mor<K: FuzzyRing, L: FuzzyRing>(
    k: &K,
    l: &L,
    gk: &GConstruction<K::Elem>,
    gl: &GConstruction<L::Elem>,
    f: &[Option<usize>],
) -> Result<Vec<ElementIndex>> {
    let kpos: HashMap<_, _> = k.elements().into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    let lel = l.elements();
    let gpos: HashMap<_, _> = gl.carrier.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    gk.carrier
        .iter()
        .map(|e| {
            let j = f[kpos[e]].ok_or_else(|| Error::InvalidArgument("map undefined on a unit".into()))?;
            gpos.get(&lel[j])
                .copied()
                .ok_or_else(|| Error::InvalidArgument("unit not sent to a unit".into()))
        })
        .collect()
}

/// The unit field `R^× ∪ {0}` with sums intersected with it.
pub fn unit_field(r: &FiniteHyperring) -> FiniteHyperring {
    let keep: Vec<_> = std::iter::once(0).chain(r.units().iter().filter(|&u| u != 0)).collect();
    let n = keep.len();
    let mut new_idx = vec![usize::MAX; r.size()];
    for (j, &x) in keep.iter().enumerate() {
        new_idx[x] = j;
    }
    let inside = SubsetMask::from_elems(keep.iter().copied());
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &a in &keep {
        for &b in &keep {
            add.push(r.add(a, b).intersection(inside).map(|x| new_idx[x]));
            mul.push(new_idx[r.mul(a, b)]);
        }
    }
    let labels = keep.iter().map(|&x| r.label(x).to_string()).collect();
    FiniteHyperring::from_masks(n, add, mul, true)
        .expect("unit field of a hyperring is well formed")
        .with_labels(labels)
}

/// The unit field of the integers: `{0, 1, -1}` (with `-1` at index 2) and
/// integer sums intersected with it, so `1 + 1` and `(-1) + (-1)` are empty.
pub fn unit_field_integers() -> FiniteHyperring {
    let vals = [0i64, 1, -1];
    let idx = |v: i64| vals.iter().position(|&x| x == v);
    let mut add = Vec::new();
    let mut mul = Vec::new();
    for &a in &vals {
        for &b in &vals {
            add.push(idx(a + b).map(SubsetMask::singleton).unwrap_or(SubsetMask::EMPTY));
            mul.push(idx(a * b).expect("units are closed under products"));
        }
    }
    FiniteHyperring::from_masks(3, add, mul, true)
        .expect("valid tables")
        .with_labels(vec!["0".into(), "1".into(), "-1".into()])
}

/// `G(F(k)) = k` on the nose, with identity maps strict homomorphisms both
/// ways.
pub fn check_roundtrips(k: &FiniteHyperring) -> Result<AxiomReport> {
    let fk = f_obj(k)?;
    let g = g_obj(&fk)?;
    let mut rep = AxiomReport::new();
    let expected: Vec<usize> = std::iter::once(0)
        .chain(k.units().iter().filter(|&u| u != 0).map(|u| fk.embed(u)))
        .collect();
    let mut sorted = expected.clone();
    sorted[1..].sort_unstable();
    rep.check(g.carrier == sorted, "carrier", Vec::<usize>::new());
    if g.hyper.size() == k.size() {
        let id: Vec<_> = (0..k.size()).collect();
        rep.check(g.hyper.add_table() == k.add_table(), "addition table", Vec::<usize>::new());
        rep.check(g.hyper.mul_table() == k.mul_table(), "multiplication table", Vec::<usize>::new());
        rep.check(check_hom(&id, k, &g.hyper, true).passed(), "identity k -> GF(k)", Vec::<usize>::new());
        rep.check(check_hom(&id, &g.hyper, k, true).passed(), "identity GF(k) -> k", Vec::<usize>::new());
    } else {
        rep.fail("carrier size", [g.hyper.size(), k.size()]);
    }
    Ok(rep)
}

/// The canonical unit isomorphism `K^× -> F(G(K))^×` and its inverse are
/// weak morphisms.
pub fn check_roundtrips_fuzzy<K: FuzzyRing>(k: &K) -> Result<AxiomReport> {
    let mut rep = is_field_like(k);
    let g = g_obj(k)?;
    let fg = f_obj(&g.hyper)?;
    let kel = k.elements();
    let kpos: HashMap<_, _> = kel.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut alpha = vec![None; kel.len()];
    let mut beta = vec![None; fg.size()];
    for (j, e) in g.carrier.iter().enumerate() {
        alpha[kpos[e]] = Some(fg.embed(j));
        beta[fg.embed(j)] = Some(kpos[e]);
    }
    let fwd = check_weak_morphism(k, &fg, &alpha)?;
    let back = check_weak_morphism(&fg, k, &beta)?;
    rep.check(fwd.accepted(), "alpha weak", Vec::<usize>::new());
    rep.check(back.accepted(), "alpha inverse weak", Vec::<usize>::new());
    Ok(rep)
}

/// All hyperring homomorphisms `R -> S` that agree with `fixed` wherever it
/// is defined, together with the number of candidate maps examined.
pub fn homs_extending(
    r: &FiniteHyperring,
    s: &FiniteHyperring,
    fixed: &[Option<ElementIndex>],
) -> (usize, Vec<Vec<ElementIndex>>) {
    let free: Vec<_> = (0..r.size()).filter(|&x| fixed[x].is_none()).collect();
    let total = s.size().pow(free.len() as u32);
    let mut found = Vec::new();
    let mut map: Vec<_> = fixed.iter().map(|x| x.unwrap_or(0)).collect();
    for code in 0..total {
        let mut c = code;
        for &x in &free {
            map[x] = c % s.size();
            c /= s.size();
        }
        if check_hom(&map, r, s, false).passed() {
            found.push(map.clone());
        }
    }
    found.sort();
    (total, found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionSearchConfig {
    /// Cap on generators used for the closure test at interior nodes.
    pub max_null_generators: usize,
    /// Cap on search nodes.
    pub budget: u64,
}

impl Default for ExtensionSearchConfig {
    fn default() -> Self {
        Self { max_null_generators: 256, budget: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ExtensionOutcome {
    /// A strong morphism restricting to the given weak one.
    Extends { map: Vec<usize>, nodes: u64 },
    /// No extension exists. The certificate, when present, is a single null
    /// combination whose image is non-null under every candidate; otherwise
    /// the search space was exhausted.
    Refuted { certificate: Option<ClosureCertificate>, nodes: u64 },
    Unknown { nodes: u64 },
}

/// Searches for a strong morphism `K -> L` whose restriction to units is
/// the weak map `i` (positions in `elements()`).
///
/// Condition (1) fixes `g` on each unit orbit `U·x` once `g(x)` is chosen,
/// and forces `g(x)` to be fixed by `i(Stab(x))`. Interior nodes prune with
/// the single-term and two-term consequences of condition (2) and a bounded
/// partial closure; leaves run the full decision procedure.
pub fn strong_extension_search<K: FuzzyRing, L: FuzzyRing>(
    k: &K,
    l: &L,
    i: &[Option<usize>],
    cfg: ExtensionSearchConfig,
) -> Result<ExtensionOutcome> {
    let weak = check_weak_morphism(k, l, i)?;
    if !weak.accepted() {
        return Ok(ExtensionOutcome::Refuted { certificate: Some(weak), nodes: 0 });
    }
    let kel = k.elements();
    let lel = l.elements();
    let n = kel.len();
    let kpos: HashMap<_, _> = kel.iter().enumerate().map(|(p, &e)| (e, p)).collect();
    let lpos: HashMap<_, _> = lel.iter().enumerate().map(|(p, &e)| (e, p)).collect();
    let units: Vec<usize> = k.units().iter().map(|u| kpos[u]).collect();
    let kmul = |a: usize, b: usize| kpos[&k.mul(kel[a], kel[b])];
    let lmul = |a: usize, b: usize| lpos[&l.mul(lel[a], lel[b])];
    let kadd = |a: usize, b: usize| kpos[&k.add(kel[a], kel[b])];
    let ladd = |a: usize, b: usize| lpos[&l.add(lel[a], lel[b])];

    let mut g: Vec<Option<usize>> = vec![None; n];
    let zero = kpos[&k.zero()];
    g[zero] = Some(lpos[&l.zero()]);
    for &u in &units {
        g[u] = i[u];
    }
    // orbit representatives of the remaining elements
    let mut reps = Vec::new();
    let mut orbit_of = vec![usize::MAX; n];
    for x in 0..n {
        if g[x].is_some() || orbit_of[x] != usize::MAX {
            continue;
        }
        for &u in &units {
            orbit_of[kmul(u, x)] = reps.len();
        }
        reps.push(x);
    }
    let absorb = |y: usize| (0..lel.len()).filter(|&z| l.is_null(l.add(lel[y], lel[z]))).count();
    let domains: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| {
            let stab: Vec<usize> = units.iter().copied().filter(|&u| kmul(u, x) == x).collect();
            let mut dom: Vec<usize> = (0..lel.len())
                .filter(|&y| stab.iter().all(|&u| lmul(i[u].unwrap(), y) == y))
                .filter(|&y| !k.is_null(kel[x]) || l.is_null(lel[y]))
                .collect();
            dom.sort_by_key(|&y| (!l.is_null(lel[y]), std::cmp::Reverse(absorb(y)), y));
            dom
        })
        .collect();

    struct Search<'a> {
        nodes: u64,
        budget: u64,
        max_gens: usize,
        found: Option<Vec<usize>>,
        assigned: Vec<usize>,
        reps: &'a [usize],
        domains: &'a [Vec<usize>],
    }

    let consistent = |g: &[Option<usize>], fresh: &[usize], max_gens: usize| -> bool {
        let assigned: Vec<usize> = (0..n).filter(|&x| g[x].is_some()).collect();
        for &y in fresh {
            let gy = g[y].unwrap();
            for &x in &assigned {
                let gx = g[x].unwrap();
                if k.is_null(kel[kadd(x, y)]) && !l.is_null(lel[ladd(gx, gy)]) {
                    return false;
                }
                if k.is_null(kel[kmul(x, y)]) && !l.is_null(lel[lmul(gx, gy)]) {
                    return false;
                }
            }
        }
        // bounded closure on generators among assigned elements
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        'outer: for (p, &a) in assigned.iter().enumerate() {
            for &b in &assigned[p..] {
                let pair = (kmul(a, b), lmul(g[a].unwrap(), g[b].unwrap()));
                if seen.insert(pair) {
                    gens.push(pair);
                    if gens.len() >= max_gens {
                        break 'outer;
                    }
                }
            }
        }
        let start = (zero, lpos[&l.zero()]);
        let mut reach = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some((s, t)) = stack.pop() {
            if k.is_null(kel[s]) && !l.is_null(lel[t]) {
                return false;
            }
            for &(a, b) in &gens {
                let nx = (kadd(s, a), ladd(t, b));
                if reach.insert(nx) {
                    stack.push(nx);
                }
            }
        }
        true
    };

    fn dfs<'a>(
        st: &mut Search<'a>,
        depth: usize,
        g: &mut Vec<Option<usize>>,
        units: &[usize],
        i: &[Option<usize>],
        lmul: &dyn Fn(usize, usize) -> usize,
        kmul: &dyn Fn(usize, usize) -> usize,
        consistent: &dyn Fn(&[Option<usize>], &[usize], usize) -> bool,
        leaf: &dyn Fn(&[usize]) -> bool,
    ) {
        if st.found.is_some() || st.nodes >= st.budget {
            return;
        }
        st.nodes += 1;
        if depth == st.reps.len() {
            let total: Vec<usize> = g.iter().map(|v| v.unwrap()).collect();
            if leaf(&total) {
                st.found = Some(total);
            }
            return;
        }
        let x = st.reps[depth];
        for &y in &st.domains[depth] {
            let mut fresh = Vec::new();
            for &u in units {
                let ux = kmul(u, x);
                if g[ux].is_none() {
                    g[ux] = Some(lmul(i[u].unwrap(), y));
                    fresh.push(ux);
                }
            }
            st.assigned.push(y);
            if consistent(g, &fresh, st.max_gens) {
                dfs(st, depth + 1, g, units, i, lmul, kmul, consistent, leaf);
            }
            st.assigned.pop();
            for ux in fresh {
                g[ux] = None;
            }
            if st.found.is_some() || st.nodes >= st.budget {
                return;
            }
        }
    }

    let leaf = |total: &[usize]| check_strong_morphism(k, l, total).accepted();
    let mut st = Search {
        nodes: 0,
        budget: cfg.budget,
        max_gens: cfg.max_null_generators,
        found: None,
        assigned: Vec::new(),
        reps: &reps,
        domains: &domains,
    };
    dfs(&mut st, 0, &mut g, &units, i, &lmul, &kmul, &consistent, &leaf);
    Ok(match st.found {
        Some(map) => ExtensionOutcome::Extends { map, nodes: st.nodes },
        None if st.nodes >= st.budget => ExtensionOutcome::Unknown { nodes: st.nodes },
        None => ExtensionOutcome::Refuted { certificate: None, nodes: st.nodes },
    })
}
