//! Grassmann-Pluecker functions with coefficients in a hyperfield or a
//! fuzzy ring.
//!
//! A function of rank `r` on `E = {0, .., n-1}` is stored on the sorted
//! `r`-subsets in lexicographic order. Other tuples are read through the
//! sign rule: repeated entries give zero and an odd permutation multiplies
//! by `-1` (hyperfield) or `epsilon` (fuzzy ring).

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::carrier::SubsetMask;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyRing;
use crate::hyper::FiniteHyperring;
use crate::report::AxiomReport;

pub const MAX_GROUND: usize = 6;
pub const MAX_RANK: usize = 3;

/// Coefficients as seen by the relations: values are carrier indices
/// (positions in `elements()` for fuzzy rings).
pub trait GpCoefficients: Sync {
    type V: Copy + Send;
    fn zero(&self) -> usize;
    fn units(&self) -> Vec<usize>;
    fn value(&self, idx: usize) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> Self::V;
    /// `-a` for hyperfields, `epsilon * a` for fuzzy rings.
    fn minus(&self, a: Self::V) -> Self::V;
    /// The relation condition on a list of terms.
    fn vanishes(&self, terms: &[Self::V]) -> bool;
}

pub struct HyperCoefficients<'a>(pub &'a FiniteHyperring);

impl GpCoefficients for HyperCoefficients<'_> {
    type V = usize;
    fn zero(&self) -> usize {
        0
    }
    fn units(&self) -> Vec<usize> {
        self.0.units().to_vec()
    }
    fn value(&self, idx: usize) -> usize {
        idx
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul(a, b)
    }
    fn minus(&self, a: usize) -> usize {
        self.0.neg(a)
    }
    fn vanishes(&self, terms: &[usize]) -> bool {
        self.0.sum(terms).contains(0)
    }
}

pub struct FuzzyCoefficients<'a, K: FuzzyRing> {
    k: &'a K,
    elements: Vec<K::Elem>,
    units: Vec<usize>,
    zero: usize,
}

impl<'a, K: FuzzyRing> FuzzyCoefficients<'a, K> {
    pub fn new(k: &'a K) -> Self {
        let elements = k.elements();
        let pos: HashMap<_, _> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut units: Vec<usize> = k.units().iter().map(|u| pos[u]).collect();
        units.sort_unstable();
        let zero = pos[&k.zero()];
        Self { k, elements, units, zero }
    }
}

impl<K: FuzzyRing + Sync> GpCoefficients for FuzzyCoefficients<'_, K>
where
    K::Elem: Send + Sync,
{
    type V = K::Elem;
    fn zero(&self) -> usize {
        self.zero
    }
    fn units(&self) -> Vec<usize> {
        self.units.clone()
    }
    fn value(&self, idx: usize) -> K::Elem {
        self.elements[idx]
    }
    fn mul(&self, a: K::Elem, b: K::Elem) -> K::Elem {
        self.k.mul(a, b)
    }
    fn minus(&self, a: K::Elem) -> K::Elem {
        self.k.mul(self.k.epsilon(), a)
    }
    fn vanishes(&self, terms: &[K::Elem]) -> bool {
        self.k.is_null(self.k.sum(terms))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GPFunction {
    pub ground_size: usize,
    pub rank: usize,
    /// One value per sorted `rank`-subset, in lexicographic order.
    pub values: Vec<usize>,
}

/// Sorted `r`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(n, r, x + 1, cur, out);
            cur.pop();
        }
    }
    go(n, r, 0, &mut cur, &mut out);
    out
}

/// Slot of a tuple and whether sorting it takes an odd permutation, or
/// `None` when it has a repeated entry.
fn slot_of(tuple: &[usize], slots: &HashMap<Vec<usize>, usize>) -> Option<(usize, bool)> {
    let mut t = tuple.to_vec();
    let mut odd = false;
    // insertion sort, counting swaps
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((slots[&t], odd))
}

/// One relation: nonzero terms `(slot_a, slot_b, negate)` and the subsets
/// `x` and `y` it came from.
#[derive(Debug, Clone)]
struct Relation {
    terms: Vec<(usize, usize, bool)>,
    witness: Vec<usize>,
    last_slot: usize,
}

fn relations(n: usize, r: usize) -> Vec<Relation> {
    let slots: HashMap<Vec<usize>, usize> =
        combinations(n, r).into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut out = Vec::new();
    for x in combinations(n, r + 1) {
        for y in combinations(n, r - 1) {
            let mut terms = Vec::new();
            for k in 0..=r {
                let hat: Vec<usize> = x.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
                let mut second = vec![x[k]];
                second.extend(&y);
                let Some((sb, odd)) = slot_of(&second, &slots) else { continue };
                let sa = slots[&hat];
                // (-1)^k with k counted from 1
                terms.push((sa, sb, odd ^ (k % 2 == 0)));
            }
            let last_slot = terms.iter().map(|&(a, b, _)| a.max(b)).max().unwrap_or(0);
            let mut witness = x.clone();
            witness.extend(&y);
            out.push(Relation { terms, witness, last_slot });
        }
    }
    out
}

fn relation_holds<C: GpCoefficients>(c: &C, rel: &Relation, values: &[usize]) -> bool {
    let terms: Vec<C::V> = rel
        .terms
        .iter()
        .filter(|&&(a, b, _)| values[a] != c.zero() && values[b] != c.zero())
        .map(|&(a, b, neg)| {
            let t = c.mul(c.value(values[a]), c.value(values[b]));
            if neg {
                c.minus(t)
            } else {
                t
            }
        })
        .collect();
    if terms.is_empty() {
        return true;
    }
    c.vanishes(&terms)
}

fn check_shape(phi: &GPFunction) -> Result<()> {
    if phi.rank == 0 || phi.rank > phi.ground_size {
        return Err(Error::InvalidArgument(format!(
            "rank {} is not in 1..={}",
            phi.rank, phi.ground_size
        )));
    }
    let expected = combinations(phi.ground_size, phi.rank).len();
    if phi.values.len() != expected {
        return Err(Error::TableShape { table: "gp values", expected, found: phi.values.len() });
    }
    Ok(())
}

/// Not identically zero, values are units or zero, and every relation
/// vanishes. Relation witnesses are `x` followed by `y`.
pub fn verify_gp<C: GpCoefficients>(phi: &GPFunction, c: &C) -> Result<AxiomReport> {
    check_shape(phi)?;
    let mut rep = AxiomReport::new();
    let units = c.units();
    let zero = c.zero();
    rep.check(phi.values.iter().any(|&v| v != zero), "not identically zero", Vec::<usize>::new());
    for (i, &v) in phi.values.iter().enumerate() {
        rep.check(v == zero || units.contains(&v), "unit or zero", [i]);
    }
    if !rep.passed() {
        return Ok(rep);
    }
    for rel in relations(phi.ground_size, phi.rank) {
        rep.check(relation_holds(c, &rel, &phi.values), "Grassmann-Pluecker relation", rel.witness.clone());
    }
    Ok(rep)
}

pub fn verify_gp_hyper(phi: &GPFunction, f: &FiniteHyperring) -> Result<AxiomReport> {
    verify_gp(phi, &HyperCoefficients(f))
}

pub fn verify_gp_fuzzy<K: FuzzyRing + Sync>(phi: &GPFunction, k: &K) -> Result<AxiomReport>
where
    K::Elem: Send + Sync,
{
    verify_gp(phi, &FuzzyCoefficients::new(k))
}

/// Every function passing [`verify_gp`], optionally one per unit-scaling
/// class (first nonzero value equal to `one`), sorted.
pub fn enumerate_gp<C: GpCoefficients>(c: &C, one: usize, n: usize, r: usize, normalize: bool) -> Result<Vec<GPFunction>> {
    if n > MAX_GROUND || r > MAX_RANK || r == 0 || r > n {
        return Err(Error::InvalidArgument(format!(
            "enumeration needs 1 <= r <= n, n <= {MAX_GROUND}, r <= {MAX_RANK}"
        )));
    }
    let slots = combinations(n, r).len();
    let rels = relations(n, r);
    let mut by_last: Vec<Vec<&Relation>> = vec![Vec::new(); slots];
    for rel in &rels {
        by_last[rel.last_slot].push(rel);
    }
    let mut alphabet = vec![c.zero()];
    alphabet.extend(c.units());

    struct Ctx<'a, C: GpCoefficients> {
        c: &'a C,
        one: usize,
        normalize: bool,
        alphabet: &'a [usize],
        by_last: &'a [Vec<&'a Relation>],
    }
    fn dfs<C: GpCoefficients>(ctx: &Ctx<C>, vals: &mut Vec<usize>, nonzero: bool, out: &mut Vec<Vec<usize>>) {
        let i = vals.len();
        if i == ctx.by_last.len() {
            if nonzero {
                out.push(vals.clone());
            }
            return;
        }
        let choices: &[usize] = if ctx.normalize && !nonzero {
            &[ctx.alphabet[0], ctx.one][..]
        } else {
            ctx.alphabet
        };
        for &v in choices {
            vals.push(v);
            if ctx.by_last[i].iter().all(|rel| relation_holds(ctx.c, rel, vals)) {
                dfs(ctx, vals, nonzero || v != ctx.alphabet[0], out);
            }
            vals.pop();
        }
    }
    let ctx = Ctx { c, one, normalize, alphabet: &alphabet, by_last: &by_last };
    // split on the first two slots
    let mut prefixes = Vec::new();
    for &a in &alphabet {
        if normalize && a != c.zero() && a != one {
            continue;
        }
        if slots == 1 {
            prefixes.push(vec![a]);
            continue;
        }
        for &b in &alphabet {
            if normalize && a == c.zero() && b != c.zero() && b != one {
                continue;
            }
            prefixes.push(vec![a, b]);
        }
    }
    use rayon::prelude::*;
    let mut found: Vec<Vec<usize>> = prefixes
        .par_iter()
        .flat_map_iter(|p| {
            let mut out = Vec::new();
            let ok = (0..p.len()).all(|i| ctx.by_last[i].iter().all(|rel| relation_holds(c, rel, &p[..=i])));
            if ok {
                let mut vals = p.clone();
                let nz = p.iter().any(|&v| v != c.zero());
                dfs(&ctx, &mut vals, nz, &mut out);
            }
            out
        })
        .collect();
    found.sort();
    Ok(found.into_iter().map(|values| GPFunction { ground_size: n, rank: r, values }).collect())
}

pub fn enumerate_gp_hyper(f: &FiniteHyperring, n: usize, r: usize, normalize: bool) -> Result<Vec<GPFunction>> {
    enumerate_gp(&HyperCoefficients(f), f.one(), n, r, normalize)
}

/// `f ∘ phi` for a map of carriers.
pub fn pushforward_gp(phi: &GPFunction, f: &[usize]) -> GPFunction {
    GPFunction { values: phi.values.iter().map(|&v| f[v]).collect(), ..phi.clone() }
}

/// `u * phi` over a hyperfield.
pub fn scale_gp(phi: &GPFunction, u: usize, f: &FiniteHyperring) -> GPFunction {
    GPFunction { values: phi.values.iter().map(|&v| f.mul(u, v)).collect(), ..phi.clone() }
}

/// Hyperfield validity against validity of the transported function in
/// `F(F)`, and in `F̄(F)` when `F` is doubly distributive.
pub fn cross_check_onetoone(phi: &GPFunction, f: &FiniteHyperring) -> Result<AxiomReport> {
    let hyper = verify_gp_hyper(phi, f)?.passed();
    let ff = crate::functors::f_obj(f)?;
    let to_f = pushforward_gp(phi, &(0..f.size()).map(|a| ff.embed(a)).collect::<Vec<_>>());
    let mut rep = AxiomReport::new();
    rep.check(verify_gp_fuzzy(&to_f, &ff)?.passed() == hyper, "agrees with F", phi.values.clone());
    if crate::hyper::check_doubly_distributive(f).passed() {
        // singletons open the sum closure in element order
        let fb = crate::ddhyper::fbar(f, true)?;
        rep.check(verify_gp_fuzzy(phi, &fb)?.passed() == hyper, "agrees with Fbar", phi.values.clone());
    }
    Ok(rep)
}

/// Fuzzy validity of `phi` (positions in `k.elements()`) against hyperfield
/// validity of its transport to `G(k)`.
pub fn cross_check_onetoone_g<K: FuzzyRing + Sync>(phi: &GPFunction, k: &K) -> Result<AxiomReport>
where
    K::Elem: Send + Sync,
{
    let fuzzy = verify_gp_fuzzy(phi, k)?.passed();
    let g = crate::functors::g_obj(k)?;
    let el = k.elements();
    let to_g: Vec<usize> = el.iter().map(|e| g.carrier.iter().position(|c| c == e).unwrap_or(usize::MAX)).collect();
    let mut rep = AxiomReport::new();
    if phi.values.iter().any(|&v| to_g[v] == usize::MAX) {
        rep.fail("values in the unit field", phi.values.clone());
        return Ok(rep);
    }
    let transported = pushforward_gp(phi, &to_g);
    rep.check(verify_gp_hyper(&transported, &g.hyper)?.passed() == fuzzy, "agrees with G", phi.values.clone());
    Ok(rep)
}

/// Bases as bitmasks over `E`.
pub type BasisFamily = Vec<SubsetMask>;

/// Supports of the nonzero values.
pub fn underlying_matroid(phi: &GPFunction) -> BasisFamily {
    combinations(phi.ground_size, phi.rank)
        .into_iter()
        .zip(&phi.values)
        .filter(|&(_, &v)| v != 0)
        .map(|(c, _)| SubsetMask::from_elems(c))
        .collect()
}

/// Basis exchange: for bases `B1`, `B2` and `x ∈ B1 \ B2` some
/// `y ∈ B2 \ B1` makes `B1 - x + y` a basis.
pub fn satisfies_basis_exchange(family: &[SubsetMask]) -> bool {
    let set: BTreeSet<u64> = family.iter().map(|m| m.bits()).collect();
    for &b1 in family {
        for &b2 in family {
            for x in b1.iter().filter(|&x| !b2.contains(x)) {
                let ok = b2
                    .iter()
                    .filter(|&y| !b1.contains(y))
                    .any(|y| set.contains(&b1.without(x).with(y).bits()));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Every nonempty family of `r`-subsets of an `n`-set satisfying basis
/// exchange, each sorted, the list sorted.
pub fn basis_exchange_oracle(n: usize, r: usize) -> Result<Vec<BasisFamily>> {
    if n > MAX_GROUND || r > n {
        return Err(Error::InvalidArgument(format!("oracle needs r <= n <= {MAX_GROUND}")));
    }
    let subsets: Vec<SubsetMask> = combinations(n, r).into_iter().map(SubsetMask::from_elems).collect();
    let m = subsets.len();
    use rayon::prelude::*;
    let mut out: Vec<BasisFamily> = (1u64..(1 << m))
        .into_par_iter()
        .filter_map(|pick| {
            let fam: Vec<SubsetMask> = (0..m).filter(|&i| pick >> i & 1 == 1).map(|i| subsets[i]).collect();
            satisfies_basis_exchange(&fam).then_some(fam)
        })
        .collect();
    for f in &mut out {
        f.sort();
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{krasner, signs};

    fn signs_example() -> GPFunction {
        // signs of the 2x2 minors of [[1,0,1,1],[0,1,1,2]]; -1 is index 2
        GPFunction { ground_size: 4, rank: 2, values: vec![1, 1, 1, 2, 2, 1] }
    }

    #[test]
    fn free_rank_one() {
        let phi = GPFunction { ground_size: 3, rank: 1, values: vec![1, 1, 1] };
        assert!(verify_gp_hyper(&phi, &krasner()).unwrap().passed());
        let zero = GPFunction { values: vec![0, 0, 0], ..phi };
        let rep = verify_gp_hyper(&zero, &krasner()).unwrap();
        assert!(rep.has("not identically zero"));
    }

    #[test]
    fn oriented_example() {
        let phi = signs_example();
        assert!(verify_gp_hyper(&phi, &signs()).unwrap().passed());
        let mut bad = phi.clone();
        bad.values[2] = 2;
        let rep = verify_gp_hyper(&bad, &signs()).unwrap();
        assert_eq!(rep.first("Grassmann-Pluecker relation").unwrap().witness, vec![0, 1, 2, 3]);
        let fs = crate::functors::f_obj(&signs()).unwrap();
        let t = pushforward_gp(&phi, &[0, 1, 3]);
        assert!(verify_gp_fuzzy(&t, &fs).unwrap().passed());
        assert!(!verify_gp_fuzzy(&pushforward_gp(&bad, &[0, 1, 3]), &fs).unwrap().passed());
        assert_eq!(underlying_matroid(&phi).len(), 6);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_gp_hyper(&krasner(), 3, 1, true).unwrap().len(), 7);
        assert_eq!(basis_exchange_oracle(3, 1).unwrap().len(), 7);
        assert_eq!(basis_exchange_oracle(4, 4).unwrap().len(), 1);
        assert_eq!(enumerate_gp_hyper(&signs(), 3, 1, true).unwrap().len(), 13);
        assert_eq!(enumerate_gp_hyper(&signs(), 3, 1, false).unwrap().len(), 26);
    }

    #[test]
    fn krasner_matches_oracle() {
        let gp = enumerate_gp_hyper(&krasner(), 4, 2, true).unwrap();
        let mut supports: Vec<_> = gp.iter().map(|p| {
            let mut m = underlying_matroid(p);
            m.sort();
            m
        }).collect();
        supports.sort();
        assert_eq!(supports, basis_exchange_oracle(4, 2).unwrap());
    }

    #[test]
    fn onetoone_on_the_example() {
        let phi = signs_example();
        assert!(cross_check_onetoone(&phi, &signs()).unwrap().passed());
        let sf = crate::fuzzy::signfuzzy();
        let phi1 = GPFunction { ground_size: 3, rank: 1, values: vec![1, 2, 0] };
        assert!(cross_check_onetoone_g(&phi1, &sf).unwrap().passed());
    }
}
