//! Fuzzy rings, their axioms, and weak and strong morphisms.
//!
//! The morphism definitions quantify over arbitrarily long sums. Sums of
//! generators live in the finite monoid `(K,+) x (L,+)`, so the set of
//! reachable pairs is computed by breadth-first closure from `(0, 0)` and
//! the implication "null in K implies null in L" is checked on every
//! reachable pair.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::AxiomReport;

/// The interface the axiom checkers and morphism deciders need.
///
/// `elements()` is the quantification domain. For finite structures it is
/// the whole carrier; for symbolic infinite ones it is a window, and every
/// result about such a structure is a statement about that window.
pub trait FuzzyRing {
    type Elem: Copy + Eq + Ord + Hash + Debug;

    fn elements(&self) -> Vec<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn epsilon(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn is_null(&self, a: Self::Elem) -> bool;

    /// Units of the quantification domain.
    fn units(&self) -> Vec<Self::Elem> {
        let elems = self.elements();
        let one = self.one();
        elems
            .iter()
            .copied()
            .filter(|&a| elems.iter().any(|&b| self.mul(a, b) == one))
            .collect()
    }

    fn sum(&self, terms: &[Self::Elem]) -> Self::Elem {
        terms.iter().fold(self.zero(), |acc, &x| self.add(acc, x))
    }

    fn label(&self, a: Self::Elem) -> String {
        format!("{a:?}")
    }
}

/// A fuzzy ring given by tables on `{0, .., n-1}` with `0` the zero and
/// `1` the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFuzzyRing {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    epsilon: usize,
    null: Vec<bool>,
    labels: Vec<String>,
}

impl FiniteFuzzyRing {
    /// Builds from row-major tables. Only well-formedness is enforced. When
    /// `epsilon` is `None` it is located as the unique unit `u` with `1 + u`
    /// null; a supplied value is taken as is and judged by the FR5 check.
    pub fn from_tables(
        n: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        null: Vec<bool>,
        epsilon: Option<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        for (table, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n * n {
                return Err(Error::TableShape { table, expected: n * n, found: t.len() });
            }
            if let Some(&bad) = t.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { table, index: bad, size: n });
            }
        }
        if null.len() != n {
            return Err(Error::TableShape { table: "k0", expected: n, found: null.len() });
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mut k = Self { n, add, mul, epsilon: 0, null, labels };
        k.epsilon = match epsilon {
            Some(e) if e >= n => {
                return Err(Error::IndexOutOfRange { table: "epsilon", index: e, size: n })
            }
            Some(e) => e,
            None => {
                let one = k.one_idx();
                let cands: Vec<_> = k
                    .unit_indices()
                    .into_iter()
                    .filter(|&u| k.null[k.add[one * n + u]])
                    .collect();
                if cands.len() != 1 {
                    return Err(Error::EpsilonNotUnique { count: cands.len() });
                }
                cands[0]
            }
        };
        Ok(k)
    }

    /// Builds from nested tables and a sorted list of null elements.
    pub fn new(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        k0: &[usize],
        epsilon: Option<usize>,
    ) -> Result<Self> {
        let n = add.len();
        let flat = |t: &[Vec<usize>], name: &'static str| -> Result<Vec<usize>> {
            if t.len() != n {
                return Err(Error::TableShape { table: name, expected: n, found: t.len() });
            }
            let mut out = Vec::with_capacity(n * n);
            for row in t {
                if row.len() != n {
                    return Err(Error::TableShape { table: name, expected: n, found: row.len() });
                }
                out.extend_from_slice(row);
            }
            Ok(out)
        };
        let mut null = vec![false; n];
        for &z in k0 {
            if z >= n {
                return Err(Error::IndexOutOfRange { table: "k0", index: z, size: n });
            }
            null[z] = true;
        }
        Self::from_tables(n, flat(add, "add")?, flat(mul, "mul")?, null, epsilon)
    }

    /// Tabulates any fuzzy ring whose quantification domain is closed under
    /// the operations. Elements keep the order of `elements()`.
    pub fn tabulate<K: FuzzyRing>(k: &K) -> Result<Self> {
        let elems = k.elements();
        let pos: HashMap<_, _> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elems.len();
        let lookup = |e: K::Elem| {
            pos.get(&e).copied().ok_or_else(|| {
                Error::InvalidArgument(format!("domain not closed: {e:?} is outside it"))
            })
        };
        if lookup(k.zero())? != 0 || (n > 1 && lookup(k.one())? != 1) {
            return Err(Error::InvalidArgument("zero and one must come first".into()));
        }
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for &a in &elems {
            for &b in &elems {
                add.push(lookup(k.add(a, b))?);
                mul.push(lookup(k.mul(a, b))?);
            }
        }
        let null = elems.iter().map(|&e| k.is_null(e)).collect();
        Self::from_tables(n, add, mul, null, Some(lookup(k.epsilon())?))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn one_idx(&self) -> usize {
        if self.n == 1 {
            0
        } else {
            1
        }
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn null_set(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.null[i]).collect()
    }

    pub fn add_nested(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul_nested(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    fn unit_indices(&self) -> Vec<usize> {
        let one = self.one_idx();
        (0..self.n)
            .filter(|&a| (0..self.n).any(|b| self.mul_idx(a, b) == one))
            .collect()
    }

    /// Relabels along a bijection `perm` (old index -> new index). Zero and
    /// one stay at indices 0 and 1.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        let bijective = perm.len() == n && perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true));
        if !bijective || perm[0] != 0 || (n > 1 && perm[1] != 1) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a bijection fixing 0 and 1")));
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let mut null = vec![false; n];
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            null[perm[a]] = self.null[a];
            labels[perm[a]] = self.labels[a].clone();
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add_idx(a, b)];
                mul[perm[a] * n + perm[b]] = perm[self.mul_idx(a, b)];
            }
        }
        Ok(Self::from_tables(n, add, mul, null, Some(perm[self.epsilon]))?.with_labels(labels))
    }
}

impl FuzzyRing for FiniteFuzzyRing {
    type Elem = usize;

    fn elements(&self) -> Vec<usize> {
        (0..self.n).collect()
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.one_idx()
    }
    fn epsilon(&self) -> usize {
        self.epsilon
    }
    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, b)
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_idx(a, b)
    }
    #[inline]
    fn is_null(&self, a: usize) -> bool {
        self.null[a]
    }
    fn units(&self) -> Vec<usize> {
        self.unit_indices()
    }
    fn label(&self, a: usize) -> String {
        self.labels[a].clone()
    }
}

/// `{0, 1, k0}` with `1 + 1 = k0`, `epsilon = 1`, `K0 = {0, k0}`.
pub fn krasnerfuzzy() -> FiniteFuzzyRing {
    let add = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]];
    let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
    FiniteFuzzyRing::new(&add, &mul, &[0, 2], Some(1))
        .expect("valid tables")
        .with_labels(vec!["0".into(), "1".into(), "k0".into()])
}

/// `{0, 1, -1, k0}` with `1 + (-1) = k0`, `epsilon = -1`, `K0 = {0, k0}`.
pub fn signfuzzy() -> FiniteFuzzyRing {
    let add = vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]];
    let mul = vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 1, 3], vec![0, 3, 3, 3]];
    FiniteFuzzyRing::new(&add, &mul, &[0, 3], Some(2))
        .expect("valid tables")
        .with_labels(vec!["0".into(), "1".into(), "-1".into(), "k0".into()])
}

/// A commutative ring as a fuzzy ring: `K0 = {0}`, `epsilon = -1`.
pub fn ring_as_fuzzy(r: &crate::ring::FiniteRing) -> FiniteFuzzyRing {
    let n = r.size();
    let mut null = vec![false; n];
    null[0] = true;
    FiniteFuzzyRing::from_tables(n, r.add_table().to_vec(), r.mul_table().to_vec(), null, Some(r.neg(r.one())))
        .expect("ring tables are well formed")
}

/// Named fuzzy rings: `krasnerfuzzy`, `signfuzzy`, `field<q>`.
pub fn builtin_fuzzy(name: &str) -> Result<FiniteFuzzyRing> {
    match name {
        "krasnerfuzzy" => Ok(krasnerfuzzy()),
        "signfuzzy" => Ok(signfuzzy()),
        _ => match name.strip_prefix("field").and_then(|q| q.parse().ok()) {
            Some(q) => Ok(ring_as_fuzzy(&crate::ring::FiniteRing::gf(q)?)),
            None => Err(Error::InvalidArgument(format!("unknown fuzzy ring {name:?}"))),
        },
    }
}

/// Units together with their inverses, in domain order.
pub fn unit_group<K: FuzzyRing>(k: &K) -> Vec<(K::Elem, K::Elem)> {
    let elems = k.elements();
    let one = k.one();
    k.units()
        .into_iter()
        .map(|u| {
            let inv = elems.iter().copied().find(|&v| k.mul(u, v) == one).expect("unit has an inverse");
            (u, inv)
        })
        .collect()
}

/// FR0 through FR7 over the quantification domain. Witnesses are positions
/// in `elements()`.
pub fn check_fuzzy_axioms<K: FuzzyRing + Sync>(k: &K) -> AxiomReport
where
    K::Elem: Send + Sync,
{
    let el = k.elements();
    let n = el.len();
    let (zero, one, eps) = (k.zero(), k.one(), k.epsilon());
    let units: Vec<usize> = {
        let us: HashSet<_> = k.units().into_iter().collect();
        (0..n).filter(|&i| us.contains(&el[i])).collect()
    };
    let mut rep = AxiomReport::new();

    // FR0 and FR1
    for i in 0..n {
        let a = el[i];
        rep.check(k.add(a, zero) == a, "FR0 additive identity", [i]);
        rep.check(k.mul(a, one) == a, "FR0 multiplicative identity", [i]);
        rep.check(k.mul(zero, a) == zero, "FR1", [i]);
        for j in 0..n {
            let b = el[j];
            rep.check(k.add(a, b) == k.add(b, a), "FR0 additive commutativity", [i, j]);
            rep.check(k.mul(a, b) == k.mul(b, a), "FR0 multiplicative commutativity", [i, j]);
        }
    }
    let assoc: Vec<AxiomReport> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut r = AxiomReport::new();
                let a = el[i];
                for j in 0..n {
                    let b = el[j];
                    let (ab, mab) = (k.add(a, b), k.mul(a, b));
                    for (l, &c) in el.iter().enumerate() {
                        r.check(
                            k.add(ab, c) == k.add(a, k.add(b, c)),
                            "FR0 additive associativity",
                            [i, j, l],
                        );
                        r.check(
                            k.mul(mab, c) == k.mul(a, k.mul(b, c)),
                            "FR0 multiplicative associativity",
                            [i, j, l],
                        );
                    }
                }
                r
            })
            .collect()
    };
    for r in assoc {
        rep.merge(r);
    }

    // FR2: units distribute
    for &u in &units {
        for j in 0..n {
            for l in 0..n {
                let (a, b, c) = (el[u], el[j], el[l]);
                rep.check(
                    k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)),
                    "FR2",
                    [u, j, l],
                );
            }
        }
    }

    // FR3
    rep.check(k.mul(eps, eps) == one, "FR3", Vec::<usize>::new());

    // FR4
    let nulls: Vec<usize> = (0..n).filter(|&i| k.is_null(el[i])).collect();
    rep.check(k.is_null(zero), "FR4 zero null", Vec::<usize>::new());
    rep.check(!k.is_null(one), "FR4 one not null", Vec::<usize>::new());
    for &i in &nulls {
        for &j in &nulls {
            rep.check(k.is_null(k.add(el[i], el[j])), "FR4 closed under +", [i, j]);
        }
        for j in 0..n {
            rep.check(k.is_null(k.mul(el[j], el[i])), "FR4 absorbs products", [j, i]);
        }
    }

    // FR5, both directions, over units
    rep.check(units.iter().any(|&u| el[u] == eps), "FR5 epsilon is a unit", Vec::<usize>::new());
    for &u in &units {
        let null = k.is_null(k.add(one, el[u]));
        rep.check(null == (el[u] == eps), "FR5", [u]);
    }

    // FR6: over pairs of null pairs; the condition is symmetric in the pairs.
    let null_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| k.is_null(k.add(el[i], el[j])))
        .collect();
    {
        use rayon::prelude::*;
        let parts: Vec<AxiomReport> = (0..null_pairs.len())
            .into_par_iter()
            .map(|p| {
                let mut r = AxiomReport::new();
                let (a, b) = null_pairs[p];
                for &(c, d) in &null_pairs[p..] {
                    let lhs = k.add(k.mul(el[a], el[c]), k.mul(eps, k.mul(el[b], el[d])));
                    r.check(k.is_null(lhs), "FR6", [a, b, c, d]);
                }
                r
            })
            .collect();
        for r in parts {
            rep.merge(r);
        }
    }

    // FR7: with N(x) = {a : a + x null}, the axiom says
    // N(b(c+d)) ⊆ N(bc + bd) for all b, c, d.
    {
        use rayon::prelude::*;
        let words = n.div_ceil(64);
        let nullset = |x: K::Elem| -> Vec<u64> {
            let mut v = vec![0u64; words];
            for (i, &a) in el.iter().enumerate() {
                if k.is_null(k.add(a, x)) {
                    v[i / 64] |= 1 << (i % 64);
                }
            }
            v
        };
        let memo: HashMap<K::Elem, Vec<u64>> = {
            let mut keys: HashSet<K::Elem> = HashSet::new();
            for &b in &el {
                for &c in &el {
                    for &d in &el {
                        keys.insert(k.mul(b, k.add(c, d)));
                        keys.insert(k.add(k.mul(b, c), k.mul(b, d)));
                    }
                }
            }
            let keys: Vec<_> = keys.into_iter().collect();
            keys.par_iter().map(|&x| (x, nullset(x))).collect()
        };
        let parts: Vec<AxiomReport> = (0..n)
            .into_par_iter()
            .map(|bi| {
                let mut r = AxiomReport::new();
                let b = el[bi];
                for ci in 0..n {
                    for di in ci..n {
                        let (c, d) = (el[ci], el[di]);
                        let left = &memo[&k.mul(b, k.add(c, d))];
                        let right = &memo[&k.add(k.mul(b, c), k.mul(b, d))];
                        let ok = left.iter().zip(right).all(|(l, r)| l & !r == 0);
                        if !ok {
                            let ai = (0..n)
                                .find(|&i| left[i / 64] >> (i % 64) & 1 == 1 && right[i / 64] >> (i % 64) & 1 == 0)
                                .expect("a violating summand exists");
                            r.fail("FR7", [ai, bi, ci, di]);
                        }
                    }
                }
                r
            })
            .collect();
        for r in parts {
            rep.merge(r);
        }
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    Weak,
    Strong,
    HyperringHom,
}

/// Summary of a pair-closure run. Pairs are positions in the two
/// structures' `elements()` lists (`usize::MAX` for a value outside them).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureCertificate {
    pub reachable: Vec<(usize, usize)>,
    /// A reachable pair whose first component is null and second is not.
    pub violating: Option<(usize, usize)>,
    /// Generator terms, as source-side positions, whose sum reaches the
    /// violating pair. Strong morphisms use products `a*b`, recorded as
    /// consecutive `(a, b)` entries.
    pub witness_terms: Vec<usize>,
}

impl ClosureCertificate {
    pub fn accepted(&self) -> bool {
        self.violating.is_none()
    }
}

/// A map between carriers. Weak morphisms are defined on units and 0 only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismTable {
    pub kind: MorphismKind,
    pub map: Vec<Option<usize>>,
    pub certificate: Option<ClosureCertificate>,
}

impl MorphismTable {
    pub fn total(kind: MorphismKind, map: Vec<usize>) -> Self {
        Self { kind, map: map.into_iter().map(Some).collect(), certificate: None }
    }

    /// The map as a total function; `None` if some entry is undefined.
    pub fn as_total(&self) -> Option<Vec<usize>> {
        self.map.iter().copied().collect()
    }
}

fn positions<K: FuzzyRing>(k: &K) -> (Vec<K::Elem>, HashMap<K::Elem, usize>) {
    let el = k.elements();
    let pos = el.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    (el, pos)
}

/// Breadth-first closure over `(K,+) x (L,+)` from `(0,0)` along generator
/// pairs. Each generator carries the source-side terms it stands for.
fn pair_closure<K: FuzzyRing, L: FuzzyRing>(
    k: &K,
    l: &L,
    gens: &[(K::Elem, L::Elem, Vec<usize>)],
) -> ClosureCertificate {
    let (_, kpos) = positions(k);
    let (_, lpos) = positions(l);
    let start = (k.zero(), l.zero());
    let mut parent: HashMap<(K::Elem, L::Elem), Option<((K::Elem, L::Elem), usize)>> = HashMap::new();
    parent.insert(start, None);
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut violating = None;
    while let Some((s, t)) = queue.pop_front() {
        if k.is_null(s) && !l.is_null(t) {
            violating = Some((s, t));
            break;
        }
        for (g, (a, b, _)) in gens.iter().enumerate() {
            let next = (k.add(s, *a), l.add(t, *b));
            if let std::collections::hash_map::Entry::Vacant(v) = parent.entry(next) {
                v.insert(Some(((s, t), g)));
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    let mut witness_terms = Vec::new();
    if let Some(mut cur) = violating {
        let mut chain = Vec::new();
        while let Some(Some((prev, g))) = parent.get(&cur).cloned() {
            chain.push(g);
            cur = prev;
        }
        chain.reverse();
        for g in chain {
            witness_terms.extend_from_slice(&gens[g].2);
        }
    }
    let p = |e: Option<&usize>| e.copied().unwrap_or(usize::MAX);
    let mut reachable: Vec<(usize, usize)> =
        order.iter().map(|(s, t)| (p(kpos.get(s)), p(lpos.get(t)))).collect();
    reachable.sort_unstable();
    ClosureCertificate {
        reachable,
        violating: violating.map(|(s, t)| (p(kpos.get(&s)), p(lpos.get(&t)))),
        witness_terms,
    }
}

/// Decides whether a unit map `f` is a weak morphism `K -> L`.
///
/// `f` is indexed by positions in `k.elements()` and yields positions in
/// `l.elements()`; only unit positions are read. Fails with an error when
/// `f` is not a group homomorphism of unit groups.
pub fn check_weak_morphism<K: FuzzyRing, L: FuzzyRing>(
    k: &K,
    l: &L,
    f: &[Option<usize>],
) -> Result<ClosureCertificate> {
    let (_, kpos) = positions(k);
    let (lel, _) = positions(l);
    let lunits: HashSet<_> = l.units().into_iter().collect();
    let kunits = k.units();
    let img = |u: K::Elem| -> Result<L::Elem> {
        let i = kpos[&u];
        match f.get(i).copied().flatten() {
            Some(j) if j < lel.len() && lunits.contains(&lel[j]) => Ok(lel[j]),
            _ => Err(Error::InvalidArgument(format!("unit at position {i} is not sent to a unit"))),
        }
    };
    for &a in &kunits {
        for &b in &kunits {
            let ab = k.mul(a, b);
            let ok = kpos.contains_key(&ab) && img(ab)? == l.mul(img(a)?, img(b)?);
            if !ok {
                return Err(Error::NotMultiplicative { a: kpos[&a], b: kpos[&b] });
            }
        }
    }
    if img(k.one())? != l.one() {
        return Err(Error::InvalidArgument("1 is not sent to 1".into()));
    }
    let gens: Vec<_> = kunits
        .iter()
        .map(|&a| Ok((a, img(a)?, vec![kpos[&a]])))
        .collect::<Result<_>>()?;
    Ok(pair_closure(k, l, &gens))
}

/// Checks a total map `g: K -> L` against the strong-morphism definition:
/// `g(0)=0`, `g(1)=1`, `g(ab)=g(a)g(b)` for units `a`, and nullity of
/// `sum a_i b_i` implies nullity of `sum g(a_i)g(b_i)`.
///
/// Violations of the first three are reported through `violating` with
/// an empty reachable set; the certificate's `witness_terms` then hold the
/// offending arguments.
pub fn check_strong_morphism<K: FuzzyRing, L: FuzzyRing>(
    k: &K,
    l: &L,
    g: &[usize],
) -> ClosureCertificate {
    let (kel, kpos) = positions(k);
    let (lel, _) = positions(l);
    let reject = |terms: Vec<usize>| ClosureCertificate {
        reachable: Vec::new(),
        violating: Some((usize::MAX, usize::MAX)),
        witness_terms: terms,
    };
    if g.len() != kel.len() || g.iter().any(|&j| j >= lel.len()) {
        return reject(Vec::new());
    }
    let gv = |a: K::Elem| -> Option<L::Elem> { kpos.get(&a).map(|&i| lel[g[i]]) };
    if gv(k.zero()) != Some(l.zero()) {
        return reject(vec![kpos[&k.zero()]]);
    }
    if gv(k.one()) != Some(l.one()) {
        return reject(vec![kpos[&k.one()]]);
    }
    for &u in &k.units() {
        for &b in &kel {
            let lhs = gv(k.mul(u, b));
            if lhs.is_none() || lhs != Some(l.mul(gv(u).unwrap(), gv(b).unwrap())) {
                return reject(vec![kpos[&u], kpos[&b]]);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut gens = Vec::new();
    for (i, &a) in kel.iter().enumerate() {
        for (j, &b) in kel.iter().enumerate().skip(i) {
            let pair = (k.mul(a, b), l.mul(lel[g[i]], lel[g[j]]));
            if seen.insert(pair) {
                gens.push((pair.0, pair.1, vec![i, j]));
            }
        }
    }
    pair_closure(k, l, &gens)
}

/// Restricts an accepted strong morphism to units and re-decides it as a
/// weak morphism.
pub fn restrict_strong_to_weak<K: FuzzyRing, L: FuzzyRing>(
    k: &K,
    l: &L,
    g: &[usize],
) -> Result<MorphismTable> {
    let (kel, kpos) = positions(k);
    let mut map = vec![None; kel.len()];
    map[kpos[&k.zero()]] = Some(g[kpos[&k.zero()]]);
    for u in k.units() {
        map[kpos[&u]] = Some(g[kpos[&u]]);
    }
    let cert = check_weak_morphism(k, l, &map)?;
    Ok(MorphismTable { kind: MorphismKind::Weak, map, certificate: Some(cert) })
}

/// All group homomorphisms between unit groups sending 0 to 0, as weak
/// candidate maps (positions), sorted.
pub fn unit_group_homs<K: FuzzyRing, L: FuzzyRing>(k: &K, l: &L) -> Vec<Vec<Option<usize>>> {
    let (kel, kpos) = positions(k);
    let (_, lpos) = positions(l);
    let ku = k.units();
    let lu = l.units();
    let mut out = Vec::new();
    fn go<K: FuzzyRing, L: FuzzyRing>(
        i: usize,
        k: &K,
        l: &L,
        ku: &[K::Elem],
        lu: &[L::Elem],
        assign: &mut Vec<Option<L::Elem>>,
        out: &mut Vec<Vec<Option<L::Elem>>>,
    ) {
        if i == ku.len() {
            out.push(assign.clone());
            return;
        }
        let forced = (ku[i] == k.one()).then(|| l.one());
        for &v in lu {
            if forced.is_some_and(|w| w != v) {
                continue;
            }
            assign[i] = Some(v);
            let ok = (0..=i).all(|j| {
                let p = k.mul(ku[i], ku[j]);
                match ku.iter().position(|&x| x == p) {
                    Some(pi) if pi <= i => assign[pi] == Some(l.mul(v, assign[j].unwrap())),
                    Some(_) => true,
                    None => false,
                }
            });
            if ok {
                go(i + 1, k, l, ku, lu, assign, out);
            }
        }
        assign[i] = None;
    }
    let mut raw = Vec::new();
    go(0, k, l, &ku, &lu, &mut vec![None; ku.len()], &mut raw);
    for a in raw {
        let mut map = vec![None; kel.len()];
        map[kpos[&k.zero()]] = Some(lpos[&l.zero()]);
        for (u, v) in ku.iter().zip(a) {
            map[kpos[u]] = Some(lpos[&v.unwrap()]);
        }
        out.push(map);
    }
    out.sort();
    out
}

/// Every weak morphism `K -> L`, sorted.
pub fn enumerate_weak_morphisms<K: FuzzyRing, L: FuzzyRing>(k: &K, l: &L) -> Vec<MorphismTable> {
    unit_group_homs(k, l)
        .into_iter()
        .filter_map(|map| {
            let cert = check_weak_morphism(k, l, &map).ok()?;
            cert.accepted().then_some(MorphismTable {
                kind: MorphismKind::Weak,
                map,
                certificate: Some(cert),
            })
        })
        .collect()
}

/// A unit bijection `alpha` such that `alpha` and its inverse are both weak
/// morphisms, as `(K position, L position)` pairs over units and zero.
pub fn weak_iso<K: FuzzyRing, L: FuzzyRing>(k: &K, l: &L) -> Option<Vec<(usize, usize)>> {
    if k.units().len() != l.units().len() {
        return None;
    }
    let (lel, _) = positions(l);
    for map in unit_group_homs(k, l) {
        let defined: Vec<(usize, usize)> =
            map.iter().enumerate().filter_map(|(i, v)| v.map(|j| (i, j))).collect();
        let targets: HashSet<usize> = defined.iter().map(|p| p.1).collect();
        if targets.len() != defined.len() {
            continue;
        }
        let mut inv = vec![None; lel.len()];
        for &(i, j) in &defined {
            inv[j] = Some(i);
        }
        let fwd = check_weak_morphism(k, l, &map).map(|c| c.accepted()).unwrap_or(false);
        let back = check_weak_morphism(l, k, &inv).map(|c| c.accepted()).unwrap_or(false);
        if fwd && back {
            return Some(defined);
        }
    }
    None
}

/// Composition of index maps: `(g ∘ f)(x) = g(f(x))`.
pub fn compose(f: &[Option<usize>], g: &[Option<usize>]) -> Vec<Option<usize>> {
    f.iter().map(|x| x.and_then(|y| g.get(y).copied().flatten())).collect()
}

/// Field-like: every pair of units `a, b` admits `c` in units ∪ {0} with
/// `a + b + c` null. Witness `[a, b]` for each failing pair.
pub fn is_field_like<K: FuzzyRing>(k: &K) -> AxiomReport {
    let (_, pos) = positions(k);
    let units = k.units();
    let mut cands = units.clone();
    cands.push(k.zero());
    let mut rep = AxiomReport::new();
    for (i, &a) in units.iter().enumerate() {
        for &b in &units[i..] {
            let ab = k.add(a, b);
            let ok = cands.iter().any(|&c| k.is_null(k.add(ab, c)));
            rep.check(ok, "field-like", [pos[&a], pos[&b]]);
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples_are_fuzzy_rings() {
        assert!(check_fuzzy_axioms(&krasnerfuzzy()).passed());
        assert!(check_fuzzy_axioms(&signfuzzy()).passed());
        for q in [2, 3, 4, 5] {
            let k = builtin_fuzzy(&format!("field{q}")).unwrap();
            assert!(check_fuzzy_axioms(&k).passed(), "field{q}");
        }
    }

    #[test]
    fn epsilon_is_located() {
        let s = signfuzzy();
        let add = s.add_nested();
        let mul = s.mul_nested();
        let located = FiniteFuzzyRing::new(&add, &mul, &[0, 3], None).unwrap();
        assert_eq!(located.epsilon(), 2);
        // K0 = {0}: no unit completes 1 to a null sum
        assert!(matches!(
            FiniteFuzzyRing::new(&add, &mul, &[0], None),
            Err(Error::EpsilonNotUnique { count: 0 })
        ));
    }

    #[test]
    fn signfuzzy_with_trivial_null_set_fails_fr5() {
        let s = signfuzzy();
        let bad = FiniteFuzzyRing::new(&s.add_nested(), &s.mul_nested(), &[0], Some(2)).unwrap();
        let rep = check_fuzzy_axioms(&bad);
        assert_eq!(rep.first("FR5").unwrap().witness, vec![2]);
    }

    #[test]
    fn unit_groups() {
        assert_eq!(unit_group(&krasnerfuzzy()), vec![(1, 1)]);
        assert_eq!(unit_group(&signfuzzy()), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn weak_morphisms_into_krasnerfuzzy() {
        let (k, s) = (krasnerfuzzy(), signfuzzy());
        let to_k = vec![Some(0), Some(1), Some(1), None];
        assert!(check_weak_morphism(&s, &k, &to_k).unwrap().accepted());
        assert_eq!(enumerate_weak_morphisms(&s, &k).len(), 1);
        // sending -1 to 1 inside signfuzzy: 1 + (-1) null, 1 + 1 not
        let bad = vec![Some(0), Some(1), Some(1), None];
        let cert = check_weak_morphism(&s, &s, &bad).unwrap();
        assert!(!cert.accepted());
        let mut terms = cert.witness_terms.clone();
        terms.sort();
        assert_eq!(terms, vec![1, 2]);
    }

    #[test]
    fn identity_is_strong_and_weak() {
        let s = signfuzzy();
        let id: Vec<_> = (0..4).collect();
        assert!(check_strong_morphism(&s, &s, &id).accepted());
        let w = restrict_strong_to_weak(&s, &s, &id).unwrap();
        assert_eq!(w.map, vec![Some(0), Some(1), Some(2), None]);
        assert!(w.certificate.unwrap().accepted());
    }

    #[test]
    fn weak_iso_search() {
        assert!(weak_iso(&krasnerfuzzy(), &krasnerfuzzy()).is_some());
        assert!(weak_iso(&krasnerfuzzy(), &signfuzzy()).is_none());
    }

    #[test]
    fn field_like() {
        assert!(is_field_like(&signfuzzy()).passed());
        assert!(is_field_like(&krasnerfuzzy()).passed());
    }
}
