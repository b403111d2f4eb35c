//! Sum closures `S(F)`, the reduced functor `F̄`, partial demifields and the
//! factorization `F̄ = F2 ∘ F1`, and rational intervals for the triangle
//! hyperfield.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{Num, Zero};
use serde::Serialize;

use crate::carrier::{ElementIndex, SubsetMask};
use crate::error::{Error, Result};
use crate::functors::PowersetFuzzyRing;
use crate::fuzzy::FiniteFuzzyRing;
use crate::hyper::{check_doubly_distributive, check_hom, FiniteHyperring};
use crate::report::{AxiomReport, Violation};

/// The nonempty iterated hypersums of a finite hyperring.
///
/// Singletons come first in element order, so `{a}` sits at position `a`;
/// the rest follow in discovery order. `terms[i]` is one tuple of elements
/// summing to `family[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumClosure {
    pub family: Vec<SubsetMask>,
    pub index: HashMap<SubsetMask, usize>,
    pub terms: Vec<Vec<ElementIndex>>,
}

impl SumClosure {
    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn position(&self, m: SubsetMask) -> Option<usize> {
        self.index.get(&m).copied()
    }
}

/// Fixpoint of `X ↦ X + {a}` from the singletons. Empty sums (partial
/// inputs) are not members.
pub fn closure_s(f: &FiniteHyperring) -> SumClosure {
    let n = f.size();
    let mut sc = SumClosure { family: Vec::new(), index: HashMap::new(), terms: Vec::new() };
    let mut queue = VecDeque::new();
    for a in 0..n {
        let m = SubsetMask::singleton(a);
        sc.index.insert(m, a);
        sc.family.push(m);
        sc.terms.push(vec![a]);
        queue.push_back(a);
    }
    while let Some(i) = queue.pop_front() {
        let x = sc.family[i];
        for a in 0..n {
            let y = f.extend(x, SubsetMask::singleton(a));
            if y.is_empty() || sc.index.contains_key(&y) {
                continue;
            }
            let mut t = sc.terms[i].clone();
            t.push(a);
            sc.index.insert(y, sc.family.len());
            sc.family.push(y);
            sc.terms.push(t);
            queue.push_back(sc.family.len() - 1);
        }
    }
    sc
}

fn mask_label(f: &FiniteHyperring, m: SubsetMask) -> String {
    match m.single() {
        Some(a) => f.label(a).to_string(),
        None => {
            let parts: Vec<_> = m.iter().map(|a| f.label(a)).collect();
            format!("{{{}}}", parts.join(","))
        }
    }
}

/// `S(F)` closed under the mask product.
pub fn check_mul_closure(f: &FiniteHyperring) -> AxiomReport {
    let sc = closure_s(f);
    let mut rep = AxiomReport::new();
    for i in 0..sc.len() {
        for j in i..sc.len() {
            let p = f.mul_masks(sc.family[i], sc.family[j]);
            rep.check(sc.position(p).is_some(), "sum closure multiplicative", [i, j]);
        }
    }
    rep
}

/// Every product of two sums is a sum `c_1 + .. + c_l`. The terms are
/// taken from the closure and re-evaluated independently.
pub fn check_condicondi(f: &FiniteHyperring) -> AxiomReport {
    let sc = closure_s(f);
    let mut rep = AxiomReport::new();
    for i in 0..sc.len() {
        for j in i..sc.len() {
            let p = f.mul_masks(sc.family[i], sc.family[j]);
            let ok = sc
                .position(p)
                .is_some_and(|k| crate::carrier::iterated_hypersum(f.add_table(), &sc.terms[k]) == p);
            rep.check(ok, "product of sums is a sum", [i, j]);
        }
    }
    rep
}

/// `F̄(F)`: the fuzzy ring on `S(F)` with null elements the sums containing
/// `0` and `epsilon = {-1}`.
///
/// With `require_dd` a failure of double distributivity is an error.
/// Without it the construction only needs `S(F)` to be multiplicatively
/// closed.
pub fn fbar(f: &FiniteHyperring, require_dd: bool) -> Result<FiniteFuzzyRing> {
    if require_dd {
        if let Some(v) = check_doubly_distributive(f).violations.first() {
            return Err(Error::NotDoublyDistributive(v.clone()));
        }
    }
    let sc = closure_s(f);
    let m = sc.len();
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let s = f.extend(sc.family[i], sc.family[j]);
            add.push(sc.position(s).ok_or_else(|| {
                Error::NotMultiplicativelyClosed(Violation { axiom: "sum closure additive".into(), witness: vec![i, j] })
            })?);
            let p = f.mul_masks(sc.family[i], sc.family[j]);
            mul.push(sc.position(p).ok_or_else(|| {
                Error::NotMultiplicativelyClosed(Violation {
                    axiom: "sum closure multiplicative".into(),
                    witness: vec![i, j],
                })
            })?);
        }
    }
    let null = sc.family.iter().map(|x| x.contains(0)).collect();
    let eps = f.neg(f.one());
    let labels = sc.family.iter().map(|&x| mask_label(f, x)).collect();
    Ok(FiniteFuzzyRing::from_tables(m, add, mul, null, Some(eps))?.with_labels(labels))
}

/// Positions in `F(F)` of the members of `S(F)`.
pub fn fbar_inclusion(sc: &SumClosure, ff: &PowersetFuzzyRing) -> Vec<usize> {
    sc.family.iter().map(|&m| ff.index(m)).collect()
}

/// The map `S(F) -> S(F')` induced by `f`, or the first member whose image
/// is not a sum.
pub fn induced_closure_map(
    f: &[ElementIndex],
    sc: &SumClosure,
    sc2: &SumClosure,
) -> std::result::Result<Vec<usize>, usize> {
    sc.family
        .iter()
        .enumerate()
        .map(|(i, &m)| sc2.position(m.map(|x| f[x])).ok_or(i))
        .collect()
}

/// A pair `(F, S)`: a hyperfield and a commutative semiring on
/// `{0, .., size-1}` containing it multiplicatively through `embedding`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDemifield {
    pub hyperfield: FiniteHyperring,
    pub size: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub embedding: Vec<usize>,
    pub labels: Vec<String>,
}

impl PartialDemifield {
    pub fn new(
        hyperfield: FiniteHyperring,
        size: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        embedding: Vec<usize>,
    ) -> Result<Self> {
        for (table, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != size * size {
                return Err(Error::TableShape { table, expected: size * size, found: t.len() });
            }
        }
        if embedding.len() != hyperfield.size() {
            return Err(Error::TableShape {
                table: "embedding",
                expected: hyperfield.size(),
                found: embedding.len(),
            });
        }
        for (table, t) in [("add", &add), ("mul", &mul), ("embedding", &embedding)] {
            if let Some(&bad) = t.iter().find(|&&x| x >= size) {
                return Err(Error::IndexOutOfRange { table, index: bad, size });
            }
        }
        let labels = (0..size).map(|i| i.to_string()).collect();
        Ok(Self { hyperfield, size, add, mul, embedding, labels })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
        self
    }

    #[inline]
    pub fn s_add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn s_mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    fn zero(&self) -> usize {
        self.embedding[0]
    }

    fn one(&self) -> usize {
        self.embedding[self.hyperfield.one()]
    }

    fn preimage(&self, s: usize) -> Option<ElementIndex> {
        self.embedding.iter().position(|&e| e == s)
    }
}

/// `F1(F) = (F, S(F))`.
pub fn f1(f: &FiniteHyperring) -> Result<PartialDemifield> {
    if let Some(v) = check_doubly_distributive(f).violations.first() {
        return Err(Error::NotDoublyDistributive(v.clone()));
    }
    let sc = closure_s(f);
    let m = sc.len();
    let pos = |x: SubsetMask| sc.position(x).expect("S(F) is closed for doubly distributive F");
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            add.push(pos(f.extend(sc.family[i], sc.family[j])));
            mul.push(pos(f.mul_masks(sc.family[i], sc.family[j])));
        }
    }
    let labels = sc.family.iter().map(|&x| mask_label(f, x)).collect();
    Ok(PartialDemifield::new(f.clone(), m, add, mul, (0..f.size()).collect())?.with_labels(labels))
}

/// Semiring axioms, `F` a multiplicative submonoid generating `S`, and
/// `a +_S b ∈ F ⇒ a +_S b ∈ a +_F b`.
pub fn check_partial_demifield(p: &PartialDemifield) -> AxiomReport {
    let n = p.size;
    let (zero, one) = (p.zero(), p.one());
    let mut rep = AxiomReport::new();
    for a in 0..n {
        rep.check(p.s_add(a, zero) == a, "additive identity", [a]);
        rep.check(p.s_mul(a, one) == a, "multiplicative identity", [a]);
        rep.check(p.s_mul(a, zero) == zero, "zero absorbing", [a]);
        for b in 0..n {
            rep.check(p.s_add(a, b) == p.s_add(b, a), "additive commutativity", [a, b]);
            rep.check(p.s_mul(a, b) == p.s_mul(b, a), "multiplicative commutativity", [a, b]);
            for c in 0..n {
                rep.check(
                    p.s_add(p.s_add(a, b), c) == p.s_add(a, p.s_add(b, c)),
                    "additive associativity",
                    [a, b, c],
                );
                rep.check(
                    p.s_mul(p.s_mul(a, b), c) == p.s_mul(a, p.s_mul(b, c)),
                    "multiplicative associativity",
                    [a, b, c],
                );
                rep.check(
                    p.s_mul(a, p.s_add(b, c)) == p.s_add(p.s_mul(a, b), p.s_mul(a, c)),
                    "distributivity",
                    [a, b, c],
                );
            }
        }
    }
    let h = &p.hyperfield;
    let distinct: HashSet<_> = p.embedding.iter().collect();
    rep.check(distinct.len() == h.size(), "embedding injective", Vec::<usize>::new());
    for a in 0..h.size() {
        for b in 0..h.size() {
            let (ea, eb) = (p.embedding[a], p.embedding[b]);
            rep.check(p.embedding[h.mul(a, b)] == p.s_mul(ea, eb), "submonoid", [a, b]);
            if let Some(c) = p.preimage(p.s_add(ea, eb)) {
                rep.check(h.add(a, b).contains(c), "compatibility", [a, b]);
            }
        }
    }
    // smallest subsemiring containing the image
    let mut seen: HashSet<usize> = p.embedding.iter().copied().collect();
    let mut stack: Vec<usize> = seen.iter().copied().collect();
    while let Some(x) = stack.pop() {
        let cur: Vec<usize> = seen.iter().copied().collect();
        for y in cur {
            for z in [p.s_add(x, y), p.s_mul(x, y)] {
                if seen.insert(z) {
                    stack.push(z);
                }
            }
        }
    }
    for s in 0..n {
        rep.check(seen.contains(&s), "generated by the hyperfield", [s]);
    }
    rep
}

/// `a_1 +_F .. +_F a_n = a_1 +_S .. +_S a_n`, read as: the assignment
/// "hypersum mask ↦ semiring sum" is a well-defined injection sending
/// singletons to the embedded elements.
///
/// Tuples up to `max_len` are enumerated outright. Longer tuples are then
/// covered by closing the set of reached `(mask, value)` pairs under adding
/// one more element: both sides of a tuple of length `k+1` are determined by
/// the pair of its first `k` terms and the last term, so the fixpoint
/// contains every pair arising from any length.
pub fn check_addsame(p: &PartialDemifield, max_len: usize) -> AxiomReport {
    let h = &p.hyperfield;
    let n = h.size();
    let mut rep = AxiomReport::new();
    let mut pairs: HashMap<SubsetMask, usize> = HashMap::new();
    let mut values: HashMap<usize, SubsetMask> = HashMap::new();
    let mut record = |rep: &mut AxiomReport, m: SubsetMask, s: usize, tuple: &[usize]| {
        if let Some(c) = m.single() {
            rep.check(p.embedding[c] == s, "sums agree on singletons", tuple.to_vec());
        }
        match pairs.get(&m) {
            Some(&old) => rep.check(old == s, "sums agree", tuple.to_vec()),
            None => {
                pairs.insert(m, s);
            }
        }
        match values.get(&s) {
            Some(&old) => rep.check(old == m, "sums injective", tuple.to_vec()),
            None => {
                values.insert(s, m);
            }
        }
    };

    let mut tuple = Vec::new();
    fn walk(
        p: &PartialDemifield,
        n: usize,
        max_len: usize,
        tuple: &mut Vec<usize>,
        m: SubsetMask,
        s: usize,
        rep: &mut AxiomReport,
        record: &mut dyn FnMut(&mut AxiomReport, SubsetMask, usize, &[usize]),
    ) {
        if !tuple.is_empty() {
            record(rep, m, s, tuple);
        }
        if tuple.len() == max_len {
            return;
        }
        let start = tuple.last().copied().unwrap_or(0);
        for a in start..n {
            let (m2, s2) = if tuple.is_empty() {
                (SubsetMask::singleton(a), p.embedding[a])
            } else {
                (p.hyperfield.extend(m, SubsetMask::singleton(a)), p.s_add(s, p.embedding[a]))
            };
            tuple.push(a);
            walk(p, n, max_len, tuple, m2, s2, rep, record);
            tuple.pop();
        }
    }
    // Sums are commutative on both sides, so nondecreasing tuples suffice.
    walk(p, n, max_len, &mut tuple, SubsetMask::EMPTY, 0, &mut rep, &mut record);

    let mut reached: HashSet<(SubsetMask, usize)> =
        (0..n).map(|a| (SubsetMask::singleton(a), p.embedding[a])).collect();
    let mut stack: Vec<_> = reached.iter().copied().collect();
    while let Some((m, s)) = stack.pop() {
        record(&mut rep, m, s, &[]);
        for a in 0..n {
            let next = (h.extend(m, SubsetMask::singleton(a)), p.s_add(s, p.embedding[a]));
            if reached.insert(next) {
                stack.push(next);
            }
        }
    }
    rep
}

/// `F2(P) = F̄(F)` for `P` satisfying [`check_addsame`].
pub fn f2(p: &PartialDemifield) -> Result<FiniteFuzzyRing> {
    if let Some(v) = check_addsame(p, 4).violations.first() {
        return Err(Error::NotInEssentialImage(v.clone()));
    }
    fbar(&p.hyperfield, true)
}

/// A morphism of partial demifields: a semiring homomorphism `S -> S'`
/// whose restriction to `F` lands in `F'` and is a (not necessarily
/// strict) hyperfield homomorphism.
pub fn check_demifield_morphism(p: &PartialDemifield, q: &PartialDemifield, f: &[usize]) -> AxiomReport {
    let mut rep = AxiomReport::new();
    if f.len() != p.size || f.iter().any(|&x| x >= q.size) {
        rep.fail("well-defined", Vec::<usize>::new());
        return rep;
    }
    rep.check(f[p.zero()] == q.zero(), "zero", Vec::<usize>::new());
    rep.check(f[p.one()] == q.one(), "one", Vec::<usize>::new());
    for a in 0..p.size {
        for b in 0..p.size {
            rep.check(f[p.s_add(a, b)] == q.s_add(f[a], f[b]), "additive", [a, b]);
            rep.check(f[p.s_mul(a, b)] == q.s_mul(f[a], f[b]), "multiplicative", [a, b]);
        }
    }
    let restricted: Option<Vec<usize>> = p.embedding.iter().map(|&e| q.preimage(f[e])).collect();
    match restricted {
        Some(r) => {
            let hom = check_hom(&r, &p.hyperfield, &q.hyperfield, false);
            rep.check(hom.passed(), "restricts to a hyperfield homomorphism", r);
        }
        None => rep.fail("restricts to the hyperfield", Vec::<usize>::new()),
    }
    rep
}

/// Baker's partial demifield of signs: `{0, 1, -1, S}` with `1 + 1 = 1`,
/// `1 + (-1) = S` and `S` absorbing for addition.
pub fn baker_signs_demifield() -> PartialDemifield {
    // indices: 0, 1, -1, S
    let add = vec![
        0, 1, 2, 3, //
        1, 1, 3, 3, //
        2, 3, 2, 3, //
        3, 3, 3, 3,
    ];
    let mul = vec![
        0, 0, 0, 0, //
        0, 1, 2, 3, //
        0, 2, 1, 3, //
        0, 3, 3, 3,
    ];
    PartialDemifield::new(crate::hyper::signs(), 4, add, mul, vec![0, 1, 2])
        .expect("valid tables")
        .with_labels(vec!["0".into(), "1".into(), "-1".into(), "S".into()])
}

/// A closed interval `[lo, hi]` of nonnegative scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Num + PartialOrd + Copy> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo < T::zero() || hi < lo {
            return Err(Error::InvalidArgument("interval needs 0 <= lo <= hi".into()));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: T) -> Self {
        Self::new(x, x).expect("nonnegative point")
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    /// `A ▽ B`, the union of `[|a-b|, a+b]` over `a ∈ A`, `b ∈ B`. The pieces
    /// overlap, so the union is the interval from the gap between `A` and
    /// `B` (zero if they meet) to `hi(A) + hi(B)`.
    pub fn triangle(self, other: Self) -> Self {
        let mut lo = T::zero();
        for gap in [other.lo - self.hi, self.lo - other.hi] {
            if gap > lo {
                lo = gap;
            }
        }
        Self { lo, hi: self.hi + other.hi }
    }

    pub fn mul(self, other: Self) -> Self {
        Self { lo: self.lo * other.lo, hi: self.hi * other.hi }
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub two_tri_three: String,
    pub squared: String,
    pub expanded: String,
    pub equal: bool,
}

/// `(2▽3)^2` against `4▽6▽6▽9` in the triangle hyperfield.
pub fn triangle_counterexample() -> (TriangleReport, [crate::RationalInterval; 3]) {
    let p = |x: i64| Interval::point(num_rational::Ratio::from_integer(x));
    let s = p(2).triangle(p(3));
    let sq = s.mul(s);
    let ex = p(4).triangle(p(6)).triangle(p(6)).triangle(p(9));
    let rep = TriangleReport {
        two_tri_three: s.to_string(),
        squared: sq.to_string(),
        expanded: ex.to_string(),
        equal: sq == ex,
    };
    (rep, [s, sq, ex])
}

impl<T: Zero + PartialEq> Interval<T> {
    pub fn contains_zero(&self) -> bool {
        self.lo.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{check_fuzzy_axioms, krasnerfuzzy, signfuzzy, FuzzyRing};
    use crate::hyper::{field, krasner, signs};

    #[test]
    fn closures() {
        let s = closure_s(&signs());
        assert_eq!(s.family, vec![SubsetMask(1), SubsetMask(2), SubsetMask(4), SubsetMask(7)]);
        let k = closure_s(&krasner());
        assert_eq!(k.family, vec![SubsetMask(1), SubsetMask(2), SubsetMask(3)]);
        assert_eq!(closure_s(&field(3).unwrap()).len(), 3);
    }

    #[test]
    fn fbar_of_printed_examples_is_table_identical() {
        let fs = fbar(&signs(), true).unwrap();
        let sf = signfuzzy();
        assert_eq!(fs.add_nested(), sf.add_nested());
        assert_eq!(fs.mul_nested(), sf.mul_nested());
        assert_eq!(fs.null_set(), vec![0, 3]);
        assert_eq!(fs.epsilon(), 2);
        let fk = fbar(&krasner(), true).unwrap();
        assert_eq!(fk.add_nested(), krasnerfuzzy().add_nested());
        assert!(check_fuzzy_axioms(&fs).passed());
    }

    #[test]
    fn fbar_of_field_is_the_field() {
        let f5 = fbar(&field(5).unwrap(), true).unwrap();
        assert_eq!(f5.size(), 5);
        assert_eq!(f5.null_set(), vec![0]);
        assert_eq!(f5.epsilon(), 4);
    }

    #[test]
    fn products_of_sums() {
        for f in [signs(), krasner()] {
            assert!(check_mul_closure(&f).passed());
            assert!(check_condicondi(&f).passed());
        }
    }

    #[test]
    fn triangle() {
        let (rep, [s, sq, ex]) = triangle_counterexample();
        let r = |a: i64, b: i64| Interval::new(num_rational::Ratio::from_integer(a), num_rational::Ratio::from_integer(b)).unwrap();
        assert_eq!(s, r(1, 5));
        assert_eq!(sq, r(1, 25));
        assert_eq!(ex, r(0, 25));
        assert!(!rep.equal);
        assert_eq!(rep.expanded, "[0, 25]");
    }

    #[test]
    fn demifields() {
        let p = f1(&signs()).unwrap();
        assert!(check_partial_demifield(&p).passed());
        assert!(check_addsame(&p, 4).passed());
        let b = baker_signs_demifield();
        assert!(check_partial_demifield(&b).passed());
        assert_eq!((p.add.clone(), p.mul.clone()), (b.add.clone(), b.mul.clone()));
        let id: Vec<_> = (0..4).collect();
        assert!(check_demifield_morphism(&p, &b, &id).passed());
        let f2s = f2(&p).unwrap();
        assert_eq!(f2s, fbar(&signs(), true).unwrap());
    }

    #[test]
    fn addsame_detects_a_collapsed_semiring() {
        // S = {0, 1, -1} with 1 + (-1) = 0 is not the sum closure of signs
        let mut p = baker_signs_demifield();
        p.add[1 * 4 + 2] = 0;
        p.add[2 * 4 + 1] = 0;
        assert!(!check_addsame(&p, 4).passed());
        assert!(matches!(f2(&p), Err(Error::NotInEssentialImage(_))));
    }
}
